#include "molscope/chem/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace molscope::chem {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    Molecule mol;
    std::string error;

    explicit Parser(const std::string& text) : s(text) {}

    bool eof() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char take() { return s[pos++]; }

    bool fail(const std::string& msg) {
        if (error.empty()) error = msg + " at position " + std::to_string(pos);
        return false;
    }

    // Two-letter organic-subset symbols first so "Cl" beats "C".
    std::optional<std::pair<std::string, bool>> read_bare_symbol() {
        if (s.compare(pos, 2, "Cl") == 0) { pos += 2; return std::make_pair(std::string("Cl"), false); }
        if (s.compare(pos, 2, "Br") == 0) { pos += 2; return std::make_pair(std::string("Br"), false); }
        const char c = peek();
        const std::string upper = "BCNOPSFI";
        const std::string lower = "bcnops";
        if (upper.find(c) != std::string::npos) {
            ++pos;
            return std::make_pair(std::string(1, c), false);
        }
        if (lower.find(c) != std::string::npos) {
            ++pos;
            return std::make_pair(std::string(1, static_cast<char>(std::toupper(c))), true);
        }
        return std::nullopt;
    }

    bool read_bracket_atom(Atom& atom) {
        ++pos;  // consume '['
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            atom.isotope = atom.isotope * 10 + (take() - '0');
        }
        if (eof()) return fail("unterminated bracket atom");

        if (s.compare(pos, 2, "se") == 0) {
            atom.element = "Se";
            atom.aromatic = true;
            pos += 2;
        } else if (std::isupper(static_cast<unsigned char>(peek()))) {
            std::string sym(1, take());
            if (!eof() && std::islower(static_cast<unsigned char>(peek())) &&
                atomic_number(sym + peek()) != 0) {
                sym += take();
            }
            atom.element = sym;
        } else if (std::string("bcnops").find(peek()) != std::string::npos) {
            atom.element = std::string(1, static_cast<char>(std::toupper(take())));
            atom.aromatic = true;
        } else {
            return fail("expected element symbol in brackets");
        }
        if (atomic_number(atom.element) == 0) {
            return fail("unknown element '" + atom.element + "'");
        }

        while (peek() == '@') ++pos;  // chirality dropped

        atom.explicit_h = 0;
        if (peek() == 'H') {
            ++pos;
            atom.explicit_h = 1;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                atom.explicit_h = take() - '0';
            }
        }
        if (peek() == '+' || peek() == '-') {
            const char sign_char = take();
            const int sign = sign_char == '+' ? 1 : -1;
            int mag = 1;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                mag = 0;
                while (std::isdigit(static_cast<unsigned char>(peek()))) mag = mag * 10 + (take() - '0');
            } else {
                while (peek() == sign_char) {
                    ++mag;
                    ++pos;
                }
            }
            atom.charge = sign * mag;
        }
        if (peek() == ':') {  // atom class, ignored
            ++pos;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        }
        if (peek() != ']') return fail("expected ']'");
        ++pos;
        return true;
    }

    bool run() {
        int prev_atom = -1;
        int pending_order = 0;  // 0 = not stated
        bool pending_aromatic = false;
        std::vector<int> branch_stack;
        std::map<int, std::pair<int, int>> ring_open;  // number -> (atom, stated order)

        auto bond_to = [&](int next_atom) {
            if (prev_atom < 0 && pending_order != 0) {
                error = "bond symbol with no preceding atom";
                return;
            }
            if (prev_atom >= 0) {
                const int order = pending_order == 0 ? 1 : pending_order;
                bool arom = pending_aromatic;
                if (pending_order == 0 && mol.atoms[prev_atom].aromatic &&
                    mol.atoms[next_atom].aromatic) {
                    arom = true;
                }
                mol.add_bond(prev_atom, next_atom, order, arom);
            }
            prev_atom = next_atom;
            pending_order = 0;
            pending_aromatic = false;
        };

        auto close_ring = [&](int number) {
            auto it = ring_open.find(number);
            if (it == ring_open.end()) {
                ring_open[number] = {prev_atom, pending_order};
            } else {
                const int other = it->second.first;
                if (other == prev_atom) {
                    error = "ring bond to self";
                    return false;
                }
                int order = pending_order != 0 ? pending_order : it->second.second;
                bool arom = pending_aromatic;
                if (order == 0) {
                    order = 1;
                    if (mol.atoms[other].aromatic && mol.atoms[prev_atom].aromatic) arom = true;
                }
                mol.add_bond(other, prev_atom, order, arom);
                ring_open.erase(it);
            }
            pending_order = 0;
            pending_aromatic = false;
            return true;
        };

        while (!eof()) {
            const char c = peek();
            if (c == '[') {
                Atom atom;
                if (!read_bracket_atom(atom)) return false;
                bond_to(mol.add_atom(atom));
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                auto sym = read_bare_symbol();
                if (!sym) return fail(std::string("unexpected symbol '") + c + "'");
                Atom atom;
                atom.element = sym->first;
                atom.aromatic = sym->second;
                bond_to(mol.add_atom(atom));
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                if (prev_atom < 0) return fail("ring closure before any atom");
                ++pos;
                if (!close_ring(c - '0')) return false;
            } else if (c == '%') {
                ++pos;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    return fail("malformed %nn ring closure");
                }
                int num = take() - '0';
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    return fail("malformed %nn ring closure");
                }
                num = num * 10 + (take() - '0');
                if (prev_atom < 0) return fail("ring closure before any atom");
                if (!close_ring(num)) return false;
            } else {
                switch (c) {
                    case '-': pending_order = 1; ++pos; break;
                    case '=': pending_order = 2; ++pos; break;
                    case '#': pending_order = 3; ++pos; break;
                    case ':': pending_order = 1; pending_aromatic = true; ++pos; break;
                    case '/':
                    case '\\': pending_order = 1; ++pos; break;  // stereo dropped
                    case '(':
                        if (prev_atom < 0) return fail("branch before any atom");
                        branch_stack.push_back(prev_atom);
                        ++pos;
                        break;
                    case ')':
                        if (branch_stack.empty()) return fail("unmatched ')'");
                        prev_atom = branch_stack.back();
                        branch_stack.pop_back();
                        ++pos;
                        break;
                    case '.':
                        prev_atom = -1;
                        pending_order = 0;
                        pending_aromatic = false;
                        ++pos;
                        break;
                    case ' ':
                    case '\t':
                        pos = s.size();  // trailing title section, ignore
                        break;
                    default:
                        return fail(std::string("unexpected character '") + c + "'");
                }
            }
        }
        if (!branch_stack.empty()) return fail("unclosed branch");
        if (!ring_open.empty()) return fail("unclosed ring bond");
        if (mol.atoms.empty()) return fail("empty molecule");
        return error.empty();
    }
};

}  // namespace

ParseResult parse_smiles(const std::string& smiles) {
    ParseResult out;
    Parser p(smiles);
    if (!p.run()) {
        out.reason = p.error.empty() ? "parse error" : p.error;
        return out;
    }
    out.ok = true;
    out.mol = std::move(p.mol);
    return out;
}

namespace {

// An aromatic atom needs one double bond inside the aromatic system
// unless its lone pair or an exocyclic double bond already satisfies the
// sp2 valence (pyrrole-type N, furan O, thiophene S).
bool needs_pi_bond(const Molecule& mol, int ai) {
    const Atom& a = mol.atoms[ai];
    bool exo_double = false;
    for (int bi : mol.bonds_of(ai)) {
        if (mol.bonds[bi].order == 2 && !mol.bonds[bi].aromatic) exo_double = true;
    }
    if (exo_double) return false;
    const int degree = mol.degree(ai);
    const int h = a.explicit_h > 0 ? a.explicit_h : 0;
    if (a.element == "C") return true;
    if (a.element == "N" || a.element == "P") {
        if (a.charge == 1) return degree + h >= 3;  // pyridinium-type
        if (a.charge == -1) return false;           // pyrrolide-type
        return degree + h == 2;                     // pyridine vs pyrrole
    }
    return false;  // O, S, Se, B contribute a lone pair
}

bool match_pi(const Molecule& mol, std::vector<int>& mate,
              const std::vector<char>& needy, int ai) {
    const int n = static_cast<int>(mol.atoms.size());
    while (ai < n && (!needy[ai] || mate[ai] >= 0)) ++ai;
    if (ai == n) return true;
    for (int bi : mol.bonds_of(ai)) {
        if (!mol.bonds[bi].aromatic) continue;
        const int nb = mol.other_end(bi, ai);
        if (!needy[nb] || mate[nb] >= 0) continue;
        mate[ai] = nb;
        mate[nb] = ai;
        if (match_pi(mol, mate, needy, ai + 1)) return true;
        mate[ai] = -1;
        mate[nb] = -1;
    }
    return false;
}

}  // namespace

bool kekulize(Molecule& mol) {
    const int n = static_cast<int>(mol.atoms.size());
    std::vector<char> needy(n, 0);
    bool any_aromatic = false;
    for (int i = 0; i < n; ++i) {
        if (mol.atoms[i].aromatic) {
            any_aromatic = true;
            needy[i] = needs_pi_bond(mol, i) ? 1 : 0;
        }
    }
    if (any_aromatic) {
        std::vector<int> mate(n, -1);
        if (!match_pi(mol, mate, needy, 0)) return false;
        for (auto& b : mol.bonds) {
            if (!b.aromatic) continue;
            b.order = (mate[b.a] == b.b) ? 2 : 1;
            b.aromatic = false;
        }
        for (auto& a : mol.atoms) a.aromatic = false;
    }
    assign_implicit_hydrogens(mol);
    return true;
}

namespace {

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::vector<int> dense_ranks(const std::vector<std::uint64_t>& keys) {
    std::vector<std::uint64_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> ranks(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        ranks[i] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    }
    return ranks;
}

int class_count(const std::vector<int>& ranks) {
    std::set<int> s(ranks.begin(), ranks.end());
    return static_cast<int>(s.size());
}

std::vector<int> refine(const Molecule& mol, std::vector<int> ranks) {
    const int n = static_cast<int>(mol.atoms.size());
    for (;;) {
        std::vector<std::uint64_t> keys(n);
        for (int i = 0; i < n; ++i) {
            std::vector<std::pair<int, int>> nb;
            for (int bi : mol.bonds_of(i)) {
                nb.emplace_back(mol.bonds[bi].order, ranks[mol.other_end(bi, i)]);
            }
            std::sort(nb.begin(), nb.end());
            std::uint64_t h = static_cast<std::uint64_t>(ranks[i]) + 1;
            for (auto& [order, r] : nb) {
                h = hash_combine(h, static_cast<std::uint64_t>(order) * 1000003ULL +
                                        static_cast<std::uint64_t>(r));
            }
            keys[i] = h;
        }
        std::vector<int> next = dense_ranks(keys);
        if (class_count(next) == class_count(ranks)) return next;
        ranks = std::move(next);
    }
}

std::vector<int> canonical_ranks(const Molecule& mol) {
    const int n = static_cast<int>(mol.atoms.size());
    std::vector<std::uint64_t> keys(n);
    for (int i = 0; i < n; ++i) {
        const Atom& a = mol.atoms[i];
        std::uint64_t h = 14695981039346656037ULL;
        h = hash_combine(h, static_cast<std::uint64_t>(atomic_number(a.element)));
        h = hash_combine(h, static_cast<std::uint64_t>(mol.degree(i)));
        h = hash_combine(h, static_cast<std::uint64_t>(a.charge + 16));
        h = hash_combine(h, static_cast<std::uint64_t>(a.implicit_h));
        h = hash_combine(h, static_cast<std::uint64_t>(a.in_ring ? 1 : 0));
        h = hash_combine(h, static_cast<std::uint64_t>(a.isotope));
        keys[i] = h;
    }
    std::vector<int> ranks = refine(mol, dense_ranks(keys));

    // Tie-break until the ranking is discrete: bump the lowest-index atom
    // of the lowest tied rank, then re-refine. Deterministic given the
    // atom order, which is all the writer needs for idempotence.
    while (class_count(ranks) < n) {
        std::vector<int> count(n, 0);
        for (int r : ranks) ++count[r];
        int target = -1;
        for (int r = 0; r < n; ++r) {
            if (count[r] > 1) {
                target = r;
                break;
            }
        }
        int chosen = -1;
        for (int i = 0; i < n; ++i) {
            if (ranks[i] == target) {
                chosen = i;
                break;
            }
        }
        for (int i = 0; i < n; ++i) ranks[i] = ranks[i] * 2 + 1;
        ranks[chosen] -= 1;
        std::vector<std::uint64_t> keys2(ranks.begin(), ranks.end());
        ranks = refine(mol, dense_ranks(keys2));
    }
    return ranks;
}

std::string atom_token(const Molecule& mol, int ai) {
    const Atom& a = mol.atoms[ai];
    int order_sum = 0;
    for (int bi : mol.bonds_of(ai)) order_sum += mol.bonds[bi].order;
    int derived_h = 0;
    for (int v : default_valences(a.element)) {
        if (order_sum <= v) {
            derived_h = v - order_sum;
            break;
        }
    }
    const bool bare = is_organic_subset(a.element) && a.charge == 0 && a.isotope == 0 &&
                      a.implicit_h == derived_h;
    if (bare) return a.element;
    std::string t = "[";
    if (a.isotope > 0) t += std::to_string(a.isotope);
    t += a.element;
    if (a.implicit_h == 1) t += "H";
    else if (a.implicit_h > 1) t += "H" + std::to_string(a.implicit_h);
    if (a.charge != 0) {
        t += a.charge > 0 ? "+" : "-";
        if (std::abs(a.charge) > 1) t += std::to_string(std::abs(a.charge));
    }
    t += "]";
    return t;
}

struct Writer {
    const Molecule& mol;
    const std::vector<int>& ranks;
    std::string out;
    std::vector<char> visited;
    std::vector<int> bond_class;  // 0 unset, 1 tree, 2 ring closure
    struct Closure {
        int digit;
        int order;
        bool carries_symbol;
    };
    std::vector<std::vector<Closure>> closures;
    int next_digit = 1;

    Writer(const Molecule& m, const std::vector<int>& r)
        : mol(m), ranks(r), visited(m.atoms.size(), 0),
          bond_class(m.bonds.size(), 0), closures(m.atoms.size()) {}

    static const char* bond_symbol(int order) {
        switch (order) {
            case 2: return "=";
            case 3: return "#";
            default: return "";
        }
    }

    std::vector<std::pair<int, int>> ordered_neighbors(int a) const {
        std::vector<std::pair<int, int>> nbrs;  // (bond, atom)
        for (int bi : mol.bonds_of(a)) nbrs.emplace_back(bi, mol.other_end(bi, a));
        std::sort(nbrs.begin(), nbrs.end(), [&](const auto& x, const auto& y) {
            if (ranks[x.second] != ranks[y.second]) return ranks[x.second] < ranks[y.second];
            return mol.bonds[x.first].order > mol.bonds[y.first].order;
        });
        return nbrs;
    }

    // Classifies bonds into tree/closure in exactly the order the writer
    // recursion consumes them, so both passes agree.
    void classify(int a) {
        visited[a] = 1;
        for (auto& [bi, nb] : ordered_neighbors(a)) {
            if (bond_class[bi] != 0) continue;
            if (visited[nb]) {
                bond_class[bi] = 2;
                const int digit = next_digit++;
                // nb was written earlier; it carries the bond symbol.
                closures[nb].push_back({digit, mol.bonds[bi].order, true});
                closures[a].push_back({digit, mol.bonds[bi].order, false});
            } else {
                bond_class[bi] = 1;
                classify(nb);
            }
        }
    }

    void emit_closure(const Closure& c) {
        if (c.carries_symbol) out += bond_symbol(c.order);
        if (c.digit < 10) out += std::to_string(c.digit);
        else out += "%" + std::to_string(c.digit);
    }

    void walk(int a, int from_bond) {
        visited[a] = 1;
        if (from_bond >= 0) out += bond_symbol(mol.bonds[from_bond].order);
        out += atom_token(mol, a);
        for (const Closure& c : closures[a]) emit_closure(c);

        std::vector<std::pair<int, int>> children;
        for (auto& [bi, nb] : ordered_neighbors(a)) {
            if (bond_class[bi] == 1 && !visited[nb]) children.emplace_back(bi, nb);
        }
        for (std::size_t i = 0; i < children.size(); ++i) {
            const bool last = (i + 1 == children.size());
            if (!last) out += "(";
            walk(children[i].second, children[i].first);
            if (!last) out += ")";
        }
    }
};

}  // namespace

std::string write_smiles(const Molecule& mol) {
    if (mol.atoms.empty()) return "";
    const std::vector<int> ranks = canonical_ranks(mol);

    auto frags = mol.fragments();
    std::sort(frags.begin(), frags.end(), [&](const auto& x, const auto& y) {
        int rx = ranks[x[0]], ry = ranks[y[0]];
        for (int a : x) rx = std::min(rx, ranks[a]);
        for (int a : y) ry = std::min(ry, ranks[a]);
        return rx < ry;
    });

    Writer w(mol, ranks);
    bool first = true;
    for (const auto& frag : frags) {
        int root = frag[0];
        for (int a : frag) {
            if (ranks[a] < ranks[root]) root = a;
        }
        std::fill(w.visited.begin(), w.visited.end(), 0);
        w.classify(root);
        std::fill(w.visited.begin(), w.visited.end(), 0);
        if (!first) w.out += ".";
        first = false;
        w.walk(root, -1);
    }
    return w.out;
}

}  // namespace molscope::chem
