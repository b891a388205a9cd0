#include "molscope/chem/mol.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace molscope::chem {

int Molecule::add_atom(Atom a) {
    atoms.push_back(std::move(a));
    adj_.emplace_back();
    return static_cast<int>(atoms.size()) - 1;
}

int Molecule::add_bond(int a, int b, int order, bool aromatic) {
    Bond bd;
    bd.a = a;
    bd.b = b;
    bd.order = order;
    bd.aromatic = aromatic;
    bonds.push_back(bd);
    const int idx = static_cast<int>(bonds.size()) - 1;
    adj_[a].push_back(idx);
    adj_[b].push_back(idx);
    return idx;
}

int Molecule::other_end(int bond, int atom) const {
    const Bond& b = bonds[bond];
    return b.a == atom ? b.b : b.a;
}

int Molecule::bond_between(int a, int b) const {
    for (int bi : adj_[a]) {
        if (other_end(bi, a) == b) return bi;
    }
    return -1;
}

int Molecule::heavy_atom_count() const {
    int n = 0;
    for (const auto& a : atoms) {
        if (a.element != "H") ++n;
    }
    return n;
}

int Molecule::total_atom_count() const {
    int n = 0;
    for (const auto& a : atoms) n += 1 + a.implicit_h;
    return n;
}

std::vector<std::vector<int>> Molecule::fragments() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(atoms.size(), 0);
    for (std::size_t start = 0; start < atoms.size(); ++start) {
        if (seen[start]) continue;
        std::vector<int> comp;
        std::deque<int> q{static_cast<int>(start)};
        seen[start] = 1;
        while (!q.empty()) {
            const int a = q.front();
            q.pop_front();
            comp.push_back(a);
            for (int bi : adj_[a]) {
                const int nb = other_end(bi, a);
                if (!seen[nb]) {
                    seen[nb] = 1;
                    q.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Molecule Molecule::extract(const std::vector<int>& atom_indices) const {
    Molecule out;
    std::map<int, int> remap;
    for (int a : atom_indices) {
        remap[a] = out.add_atom(atoms[a]);
    }
    for (const Bond& b : bonds) {
        auto ia = remap.find(b.a);
        auto ib = remap.find(b.b);
        if (ia != remap.end() && ib != remap.end()) {
            const int bi = out.add_bond(ia->second, ib->second, b.order, b.aromatic);
            out.bonds[bi].in_ring = b.in_ring;
        }
    }
    return out;
}

std::vector<std::vector<int>> Molecule::perceive_rings() {
    for (auto& a : atoms) a.in_ring = false;
    for (auto& b : bonds) b.in_ring = false;

    // Spanning forest; every non-tree edge closes one independent cycle.
    const int n = static_cast<int>(atoms.size());
    std::vector<int> parent(n, -2);
    std::vector<char> tree_edge(bonds.size(), 0);
    for (int root = 0; root < n; ++root) {
        if (parent[root] != -2) continue;
        parent[root] = -1;
        std::deque<int> q{root};
        while (!q.empty()) {
            const int a = q.front();
            q.pop_front();
            for (int bi : adj_[a]) {
                const int nb = other_end(bi, a);
                if (parent[nb] == -2) {
                    parent[nb] = a;
                    tree_edge[bi] = 1;
                    q.push_back(nb);
                }
            }
        }
    }

    std::vector<std::vector<int>> rings;
    std::set<std::vector<int>> dedupe;
    for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
        if (tree_edge[bi]) continue;
        // Shortest path between endpoints avoiding this bond = smallest
        // ring through it.
        const int src = bonds[bi].a;
        const int dst = bonds[bi].b;
        std::vector<int> prev(n, -2);
        prev[src] = -1;
        std::deque<int> q{src};
        while (!q.empty() && prev[dst] == -2) {
            const int a = q.front();
            q.pop_front();
            for (int bj : adj_[a]) {
                if (static_cast<std::size_t>(bj) == bi) continue;
                const int nb = other_end(bj, a);
                if (prev[nb] == -2) {
                    prev[nb] = a;
                    q.push_back(nb);
                }
            }
        }
        if (prev[dst] == -2) continue;  // parallel edge, no alternative path
        std::vector<int> ring;
        for (int a = dst; a != -1; a = prev[a]) ring.push_back(a);
        std::vector<int> key = ring;
        std::sort(key.begin(), key.end());
        if (!dedupe.insert(key).second) continue;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const int a = ring[i];
            const int b = ring[(i + 1) % ring.size()];
            atoms[a].in_ring = true;
            const int bk = bond_between(a, b);
            if (bk >= 0) bonds[bk].in_ring = true;
        }
        rings.push_back(std::move(ring));
    }
    return rings;
}

namespace {

struct ElementInfo {
    const char* symbol;
    int z;
    bool organic_subset;
    std::vector<int> valences;
};

const std::vector<ElementInfo>& element_table() {
    static const std::vector<ElementInfo> table = {
        {"H", 1, false, {1}},    {"B", 5, true, {3}},      {"C", 6, true, {4}},
        {"N", 7, true, {3, 5}},  {"O", 8, true, {2}},      {"F", 9, true, {1}},
        {"Si", 14, false, {4}},  {"P", 15, true, {3, 5}},  {"S", 16, true, {2, 4, 6}},
        {"Cl", 17, true, {1}},   {"Se", 34, false, {2, 4, 6}},
        {"Br", 35, true, {1}},   {"I", 53, true, {1}},
        // Elements outside the modelable organic set; recognized so the
        // parser can accept them and the standardizer can reject records.
        {"Li", 3, false, {1}},   {"Na", 11, false, {1}},   {"Mg", 12, false, {2}},
        {"Al", 13, false, {3}},  {"K", 19, false, {1}},    {"Ca", 20, false, {2}},
        {"Ti", 22, false, {4}},  {"Cr", 24, false, {3}},   {"Mn", 25, false, {2}},
        {"Fe", 26, false, {2}},  {"Co", 27, false, {2}},   {"Ni", 28, false, {2}},
        {"Cu", 29, false, {2}},  {"Zn", 30, false, {2}},   {"As", 33, false, {3, 5}},
        {"Pd", 46, false, {2}},  {"Ag", 47, false, {1}},   {"Sn", 50, false, {4}},
        {"Sb", 51, false, {3}},  {"Te", 52, false, {2}},   {"Pt", 78, false, {2}},
        {"Au", 79, false, {1}},  {"Hg", 80, false, {2}},   {"Pb", 82, false, {2}},
        {"Bi", 83, false, {3}},
    };
    return table;
}

const ElementInfo* find_element(const std::string& element) {
    for (const auto& e : element_table()) {
        if (element == e.symbol) return &e;
    }
    return nullptr;
}

}  // namespace

int atomic_number(const std::string& element) {
    const ElementInfo* e = find_element(element);
    return e ? e->z : 0;
}

bool is_organic_subset(const std::string& element) {
    const ElementInfo* e = find_element(element);
    return e && e->organic_subset;
}

const std::vector<int>& default_valences(const std::string& element) {
    static const std::vector<int> none;
    const ElementInfo* e = find_element(element);
    return e ? e->valences : none;
}

void assign_implicit_hydrogens(Molecule& mol) {
    for (std::size_t i = 0; i < mol.atoms.size(); ++i) {
        Atom& a = mol.atoms[i];
        if (a.explicit_h >= 0) {
            a.implicit_h = a.explicit_h;
            continue;
        }
        int order_sum = 0;
        for (int bi : mol.bonds_of(static_cast<int>(i))) {
            order_sum += mol.bonds[bi].order;
        }
        a.implicit_h = 0;
        for (int v : default_valences(a.element)) {
            if (order_sum <= v) {
                a.implicit_h = v - order_sum;
                break;
            }
        }
    }
}

}  // namespace molscope::chem
