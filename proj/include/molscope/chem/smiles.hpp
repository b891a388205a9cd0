#pragma once

#include <optional>
#include <string>

#include "molscope/chem/mol.hpp"

namespace molscope::chem {

struct ParseResult {
    bool ok = false;
    Molecule mol;
    std::string reason;  // set when !ok
};

// Parses a SMILES string covering the subset needed for small organic
// molecules: organic-subset atoms, bracket atoms with isotope/H/charge,
// aromatic lowercase forms, ring closures (including %nn), branches and
// dot-separated fragments. Stereo markers (/ \ @) are accepted and
// dropped. Never throws on bad input; failures land in `reason`.
ParseResult parse_smiles(const std::string& smiles);

// Converts aromatic atoms/bonds to an alternating single/double pattern
// via backtracking matching. Returns false when no valid assignment
// exists. Clears aromatic flags and refreshes implicit hydrogens.
bool kekulize(Molecule& mol);

// Deterministic SMILES output. Ranking is a Morgan-style iterative
// refinement over local invariants with canonical tie-breaking, so the
// writer is stable under re-parsing its own output (idempotent), which
// is the contract standardization relies on.
std::string write_smiles(const Molecule& mol);

}  // namespace molscope::chem
