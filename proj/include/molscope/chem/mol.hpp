#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::chem {

struct Atom {
    std::string element;
    int charge = 0;
    int isotope = 0;
    bool aromatic = false;  // set by lowercase SMILES input; cleared by kekulize
    int explicit_h = -1;    // bracket-atom H count; -1 means "derive from valence"
    int implicit_h = 0;     // filled in by finalize()
    bool in_ring = false;
};

struct Bond {
    int a = 0;
    int b = 0;
    int order = 1;          // 1, 2, 3
    bool aromatic = false;  // cleared by kekulize
    bool in_ring = false;
};

class Molecule {
public:
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;

    int add_atom(Atom a);
    int add_bond(int a, int b, int order, bool aromatic);

    int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }
    const std::vector<int>& bonds_of(int atom) const { return adj_[atom]; }
    int other_end(int bond, int atom) const;
    int bond_between(int a, int b) const;  // -1 when absent

    int heavy_atom_count() const;
    int total_atom_count() const;  // heavy + explicit/implicit hydrogens

    // Connected components, each a list of atom indices in input order.
    std::vector<std::vector<int>> fragments() const;
    Molecule extract(const std::vector<int>& atom_indices) const;

    // Ring perception: marks in_ring flags and returns one smallest ring
    // per independent cycle (atom index lists).
    std::vector<std::vector<int>> perceive_rings();

private:
    std::vector<std::vector<int>> adj_;
};

int atomic_number(const std::string& element);  // 0 when unknown
bool is_organic_subset(const std::string& element);

// Default valence list for implicit-hydrogen derivation, smallest first.
const std::vector<int>& default_valences(const std::string& element);

// Fills implicit_h for every atom that has no bracket H count. Call after
// kekulize so all bond orders are explicit.
void assign_implicit_hydrogens(Molecule& mol);

}  // namespace molscope::chem
