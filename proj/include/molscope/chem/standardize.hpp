#pragma once

#include <string>

#include "molscope/chem/mol.hpp"

namespace molscope::chem {

// Elements a kept structure may contain; anything else rejects the record.
const std::vector<std::string>& organic_allowlist();

struct StandardizeResult {
    bool accepted = false;
    std::string smiles;      // canonical form of the kept fragment
    Molecule mol;            // kekulized, ring-perceived kept fragment
    std::string reject_code;   // parse_error | kekulize_error | inorganic_element
    std::string reject_detail;
};

// Normalizes a raw structure string:
//   1. parse (failure -> rejected, not thrown),
//   2. kekulize aromatic systems,
//   3. keep the fragment with the most heavy atoms (tie: most total atoms,
//      then lexicographically smallest canonical string),
//   4. reject if the kept fragment contains an element outside the
//      organic allowlist,
//   5. emit the canonical string.
// standardize(standardize(s).smiles) returns the same string.
StandardizeResult standardize_structure(const std::string& smiles);

}  // namespace molscope::chem
