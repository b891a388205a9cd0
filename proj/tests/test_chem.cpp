#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "molscope/chem/mol.hpp"
#include "molscope/chem/smiles.hpp"
#include "molscope/chem/standardize.hpp"

using namespace molscope;
using namespace molscope::chem;

namespace {

// Independent fragment oracle: splits the input on '.' and counts heavy
// atoms per piece with a dumb token scan, without touching the graph code.
int oracle_heavy_atoms(const std::string& frag_smiles) {
    int n = 0;
    for (std::size_t i = 0; i < frag_smiles.size(); ++i) {
        const char c = frag_smiles[i];
        if (c == '[') {
            std::size_t j = i + 1;
            while (j < frag_smiles.size() && std::isdigit(static_cast<unsigned char>(frag_smiles[j]))) ++j;
            std::string sym(1, frag_smiles[j]);
            if (j + 1 < frag_smiles.size() && std::islower(static_cast<unsigned char>(frag_smiles[j + 1])) &&
                atomic_number(sym + frag_smiles[j + 1]) != 0) {
                sym += frag_smiles[j + 1];
            }
            if (sym != "H" && sym != "h") ++n;
            while (i < frag_smiles.size() && frag_smiles[i] != ']') ++i;
        } else if (std::isupper(static_cast<unsigned char>(c))) {
            ++n;
            if (i + 1 < frag_smiles.size() && std::islower(static_cast<unsigned char>(frag_smiles[i + 1])) &&
                atomic_number(std::string(1, c) + frag_smiles[i + 1]) != 0) {
                ++i;
            }
        } else if (std::string("bcnops").find(c) != std::string::npos) {
            ++n;
        }
    }
    return n;
}

std::vector<std::string> split_fragments(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == '.' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("parser handles basic structures") {
    auto r = parse_smiles("CCO");
    REQUIRE(r.ok);
    CHECK(r.mol.atoms.size() == 3);
    CHECK(r.mol.bonds.size() == 2);
    REQUIRE(kekulize(r.mol));
    CHECK(r.mol.atoms[0].implicit_h == 3);
    CHECK(r.mol.atoms[1].implicit_h == 2);
    CHECK(r.mol.atoms[2].implicit_h == 1);
}

TEST_CASE("parser handles rings, branches, charges and brackets") {
    auto r = parse_smiles("CC(=O)[O-].[Na+]");
    REQUIRE(r.ok);
    CHECK(r.mol.atoms.size() == 5);
    CHECK(r.mol.fragments().size() == 2);
    CHECK(r.mol.atoms[3].charge == -1);
    CHECK(r.mol.atoms[4].charge == 1);

    auto cyc = parse_smiles("C1CCCCC1");
    REQUIRE(cyc.ok);
    CHECK(cyc.mol.bonds.size() == 6);
    auto rings = cyc.mol.perceive_rings();
    REQUIRE(rings.size() == 1);
    CHECK(rings[0].size() == 6);

    auto pct = parse_smiles("C%10CCCCC%10");
    REQUIRE(pct.ok);
    CHECK(pct.mol.bonds.size() == 6);
}

TEST_CASE("parser rejects malformed input with a reason") {
    for (const char* bad : {"C1CC", "C(", "C)", "C[Qx]", "", "=C", "[C"}) {
        auto r = parse_smiles(bad);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(r.reason.empty());
    }
}

TEST_CASE("kekulize assigns alternating bonds in benzene") {
    auto r = parse_smiles("c1ccccc1");
    REQUIRE(r.ok);
    REQUIRE(kekulize(r.mol));
    int doubles = 0;
    for (const auto& b : r.mol.bonds) {
        CHECK_FALSE(b.aromatic);
        if (b.order == 2) ++doubles;
    }
    CHECK(doubles == 3);
    for (const auto& a : r.mol.atoms) CHECK(a.implicit_h == 1);
}

TEST_CASE("kekulize handles heteroaromatics") {
    auto pyridine = parse_smiles("c1ccncc1");
    REQUIRE(pyridine.ok);
    REQUIRE(kekulize(pyridine.mol));

    auto pyrrole = parse_smiles("c1cc[nH]c1");
    REQUIRE(pyrrole.ok);
    REQUIRE(kekulize(pyrrole.mol));
    int doubles = 0;
    for (const auto& b : pyrrole.mol.bonds)
        if (b.order == 2) ++doubles;
    CHECK(doubles == 2);

    auto furan = parse_smiles("c1ccoc1");
    REQUIRE(furan.ok);
    REQUIRE(kekulize(furan.mol));

    auto naphthalene = parse_smiles("c1ccc2ccccc2c1");
    REQUIRE(naphthalene.ok);
    REQUIRE(kekulize(naphthalene.mol));
    int nd = 0;
    for (const auto& b : naphthalene.mol.bonds)
        if (b.order == 2) ++nd;
    CHECK(nd == 5);
}

TEST_CASE("standardize keeps the fragment with the most heavy atoms") {
    // Oracle: per-fragment heavy-atom counts from an independent token scan.
    const std::string input = "CC(=O)[O-].[Na+]";
    int best = -1;
    std::string best_frag;
    for (const auto& frag : split_fragments(input)) {
        const int h = oracle_heavy_atoms(frag);
        if (h > best) {
            best = h;
            best_frag = frag;
        }
    }
    CHECK(best == 4);
    CHECK(best_frag == "CC(=O)[O-]");

    auto res = standardize_structure(input);
    REQUIRE(res.accepted);
    CHECK(res.mol.heavy_atom_count() == best);
    // Sodium is gone.
    for (const auto& a : res.mol.atoms) CHECK(a.element != "Na");
}

TEST_CASE("standardize rejects structures with inorganic elements") {
    auto res = standardize_structure("C1CCCC1[Fe]C1CCCC1");
    CHECK_FALSE(res.accepted);
    CHECK(res.reject_code == "inorganic_element");
    CHECK(res.reject_detail == "Fe");

    // A counterion outside the allowlist is dropped with its fragment.
    auto salt = standardize_structure("CCCC(=O)[O-].[K+]");
    CHECK(salt.accepted);
}

TEST_CASE("standardize rejects unparseable input with a reason code") {
    auto res = standardize_structure("C1CC");
    CHECK_FALSE(res.accepted);
    CHECK(res.reject_code == "parse_error");
}

TEST_CASE("single-fragment organic structure passes through") {
    auto res = standardize_structure("c1ccccc1O");
    REQUIRE(res.accepted);
    CHECK(res.mol.fragments().size() == 1);
    CHECK(res.mol.heavy_atom_count() == 7);
}

TEST_CASE("standardization is idempotent on a corpus") {
    const std::vector<std::string> corpus = {
        "CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O", "CN1CCC[C@H]1c1cccnc1",
        "c1ccc2ccccc2c1", "CC(C)Cc1ccc(cc1)C(C)C(=O)O", "C1CCCCC1",
        "c1cc[nH]c1", "CC(=O)[O-].[Na+]", "OC(=O)c1ccccc1OC(C)=O",
        "Clc1ccccc1Br", "CCS(=O)(=O)N", "N#Cc1ccccc1", "CC(N)C(=O)O",
        "c1ccoc1CO", "C(F)(F)F", "[NH4+].CC(=O)[O-]", "CCCCCCCCCC",
        "CC1=CC(=O)C=CC1=O", "c1ccc(cc1)c1ccccc1"};
    for (const auto& s : corpus) {
        auto first = standardize_structure(s);
        REQUIRE_MESSAGE(first.accepted, s);
        auto second = standardize_structure(first.smiles);
        REQUIRE_MESSAGE(second.accepted, first.smiles);
        CHECK_MESSAGE(first.smiles == second.smiles,
                      (s + " -> " + first.smiles + " -> " + second.smiles));
        CHECK(first.mol.heavy_atom_count() == second.mol.heavy_atom_count());
    }
}

TEST_CASE("canonical writer round-trips structure content") {
    const std::vector<std::string> corpus = {
        "CCO", "OCC", "C(O)C",                  // same molecule, three spellings
        "c1ccccc1C", "Cc1ccccc1",
    };
    std::set<std::string> canonical;
    for (const auto& s : corpus) {
        auto res = standardize_structure(s);
        REQUIRE(res.accepted);
        canonical.insert(res.smiles);
    }
    // Three ethanol spellings collapse; two toluene spellings collapse.
    CHECK(canonical.size() == 2);
}

TEST_CASE("fragment tie-breaking uses total atoms then string order") {
    // Same heavy atoms (2): ethane (8 atoms total) beats ethene (6 total).
    auto res = standardize_structure("C=C.CC");
    REQUIRE(res.accepted);
    CHECK(res.smiles == "CC");
}
