#include "molscope/chem/standardize.hpp"

#include <algorithm>

#include "molscope/chem/smiles.hpp"

namespace molscope::chem {

const std::vector<std::string>& organic_allowlist() {
    static const std::vector<std::string> allow = {
        "H", "B", "C", "N", "O", "F", "Si", "P", "S", "Cl", "Se", "Br", "I"};
    return allow;
}

namespace {

bool allowed_element(const std::string& element) {
    const auto& allow = organic_allowlist();
    return std::find(allow.begin(), allow.end(), element) != allow.end();
}

}  // namespace

StandardizeResult standardize_structure(const std::string& smiles) {
    StandardizeResult out;

    ParseResult parsed = parse_smiles(smiles);
    if (!parsed.ok) {
        out.reject_code = "parse_error";
        out.reject_detail = parsed.reason;
        return out;
    }
    Molecule mol = std::move(parsed.mol);
    if (!kekulize(mol)) {
        out.reject_code = "kekulize_error";
        out.reject_detail = "no alternating bond assignment for aromatic system";
        return out;
    }

    const auto frags = mol.fragments();
    Molecule best;
    std::string best_smiles;
    int best_heavy = -1;
    int best_total = -1;
    for (const auto& frag : frags) {
        Molecule candidate = mol.extract(frag);
        const int heavy = candidate.heavy_atom_count();
        const int total = candidate.total_atom_count();
        std::string cs = write_smiles(candidate);
        const bool better = heavy > best_heavy ||
                            (heavy == best_heavy && total > best_total) ||
                            (heavy == best_heavy && total == best_total && cs < best_smiles);
        if (!better) continue;
        best = std::move(candidate);
        best_smiles = std::move(cs);
        best_heavy = heavy;
        best_total = total;
    }

    for (const auto& atom : best.atoms) {
        if (!allowed_element(atom.element)) {
            out.reject_code = "inorganic_element";
            out.reject_detail = atom.element;
            return out;
        }
    }

    best.perceive_rings();
    out.accepted = true;
    out.mol = std::move(best);
    out.smiles = std::move(best_smiles);
    return out;
}

}  // namespace molscope::chem
