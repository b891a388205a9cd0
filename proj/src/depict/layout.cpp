#include "molscope/depict/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>

namespace molscope::depict {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vec {
    double x, y;
};
Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(Vec a, double s) { return {a.x * s, a.y * s}; }
double norm(Vec a) { return std::hypot(a.x, a.y); }
Vec rotate(Vec a, double rad) {
    const double c = std::cos(rad), s = std::sin(rad);
    return {a.x * c - a.y * s, a.x * s + a.y * c};
}

struct LayoutState {
    const chem::Molecule& mol;
    std::vector<std::vector<int>> rings;        // cyclic atom order each
    std::vector<int> ring_system;               // ring index -> system id
    std::vector<std::vector<int>> atom_rings;   // atom -> ring indices
    std::vector<Point> coords;
    std::vector<char> placed;

    explicit LayoutState(const chem::Molecule& m) : mol(m) {}

    Vec pos(int a) const { return {coords[a].x, coords[a].y}; }
    void set(int a, Vec p) {
        coords[a] = {p.x, p.y};
        placed[a] = 1;
    }

    double min_dist_to_placed(Vec p, int ignore_a, int ignore_b) const {
        double best = 1e9;
        for (std::size_t i = 0; i < placed.size(); ++i) {
            if (!placed[i] || static_cast<int>(i) == ignore_a || static_cast<int>(i) == ignore_b)
                continue;
            best = std::min(best, norm(pos(static_cast<int>(i)) - p));
        }
        return best;
    }

    // Direction into the widest free angular gap around a placed atom.
    Vec free_direction(int a) const {
        std::vector<double> angles;
        for (int bi : mol.bonds_of(a)) {
            const int nb = mol.other_end(bi, a);
            if (placed[nb]) {
                const Vec d = pos(nb) - pos(a);
                if (norm(d) > 1e-9) angles.push_back(std::atan2(d.y, d.x));
            }
        }
        if (angles.empty()) return {1.0, 0.0};
        if (angles.size() == 1) {
            // Zig-zag: pick the 120-degree branch with more clearance.
            const Vec d{std::cos(angles[0]), std::sin(angles[0])};
            const Vec c1 = rotate(d, 2.0 * kPi / 3.0);
            const Vec c2 = rotate(d, -2.0 * kPi / 3.0);
            const Vec p1 = pos(a) + c1;
            const Vec p2 = pos(a) + c2;
            const double d1 = min_dist_to_placed(p1, a, -1);
            const double d2 = min_dist_to_placed(p2, a, -1);
            return d1 >= d2 ? c1 : c2;
        }
        std::sort(angles.begin(), angles.end());
        double best_gap = -1.0, best_mid = 0.0;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            const double a0 = angles[i];
            const double a1 = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + 2.0 * kPi;
            const double gap = a1 - a0;
            if (gap > best_gap) {
                best_gap = gap;
                best_mid = a0 + gap / 2.0;
            }
        }
        return {std::cos(best_mid), std::sin(best_mid)};
    }

    void place_polygon(const std::vector<int>& ring, Vec center, double start_angle,
                       bool clockwise) {
        const int k = static_cast<int>(ring.size());
        const double r = 0.5 / std::sin(kPi / k);
        const double step = (clockwise ? -1.0 : 1.0) * 2.0 * kPi / k;
        for (int i = 0; i < k; ++i) {
            if (placed[ring[i]]) continue;
            const double ang = start_angle + step * i;
            set(ring[i], center + Vec{std::cos(ang), std::sin(ang)} * r);
        }
    }

    // Places one ring given that some of its atoms may already be fixed.
    void place_ring(const std::vector<int>& ring) {
        const int k = static_cast<int>(ring.size());
        const double r = 0.5 / std::sin(kPi / k);
        std::vector<int> placed_idx;
        for (int i = 0; i < k; ++i) {
            if (placed[ring[i]]) placed_idx.push_back(i);
        }

        if (placed_idx.empty()) {
            place_polygon(ring, {0.0, 0.0}, -kPi / 2.0, false);
            return;
        }

        // Fused edge: two neighbors in cyclic order already placed.
        for (int i : placed_idx) {
            const int j = (i + 1) % k;
            if (!placed[ring[j]]) continue;
            const Vec pa = pos(ring[i]);
            const Vec pb = pos(ring[j]);
            const Vec mid = (pa + pb) * 0.5;
            Vec edge = pb - pa;
            const double elen = norm(edge);
            if (elen < 1e-9) continue;
            edge = edge * (1.0 / elen);
            const Vec perp{-edge.y, edge.x};
            const double apothem = 0.5 / std::tan(kPi / k) * elen;  // scale with edge
            const Vec c1 = mid + perp * apothem;
            const Vec c2 = mid - perp * apothem;
            const Vec center =
                min_dist_to_placed(c1, ring[i], ring[j]) >= min_dist_to_placed(c2, ring[i], ring[j])
                    ? c1
                    : c2;
            // Walk the cycle in both orientations; keep the one whose
            // predicted position of ring[j] matches its actual position.
            const double ang_a = std::atan2(pa.y - center.y, pa.x - center.x);
            const double rr = norm(pa - center);
            for (const double dir : {+1.0, -1.0}) {
                const double step = dir * 2.0 * kPi / k;
                const Vec predicted_b =
                    center + Vec{std::cos(ang_a + step), std::sin(ang_a + step)} * rr;
                if (norm(predicted_b - pb) < 0.3 * elen) {
                    for (int t = 0; t < k; ++t) {
                        const int atom = ring[(i + t) % k];
                        if (placed[atom]) continue;
                        const double ang = ang_a + step * t;
                        set(atom, center + Vec{std::cos(ang), std::sin(ang)} * rr);
                    }
                    return;
                }
            }
        }

        if (placed_idx.size() == 1) {  // spiro or entry atom
            const int i = placed_idx[0];
            const int atom = ring[i];
            const Vec dir = free_direction(atom);
            const Vec center = pos(atom) + dir * r;
            const double ang0 = std::atan2(pos(atom).y - center.y, pos(atom).x - center.x);
            for (int t = 0; t < k; ++t) {
                const int at = ring[(i + t) % k];
                if (placed[at]) continue;
                const double ang = ang0 + 2.0 * kPi / k * t;
                set(at, center + Vec{std::cos(ang), std::sin(ang)} * r);
            }
            return;
        }

        // Bridged or oddly shared: drop remaining atoms next to a placed
        // ring neighbor; crude but deterministic.
        for (int t = 0; t < k; ++t) {
            const int atom = ring[t];
            if (placed[atom]) continue;
            for (int bi : mol.bonds_of(atom)) {
                const int nb = mol.other_end(bi, atom);
                if (placed[nb]) {
                    set(atom, pos(nb) + free_direction(nb));
                    break;
                }
            }
            if (!placed[atom]) set(atom, {0.0, 0.0});
        }
    }

    // Places every ring of a system, starting from rings touching already
    // placed atoms and expanding by adjacency.
    void place_system(int system_id) {
        std::vector<int> member_rings;
        for (std::size_t ri = 0; ri < rings.size(); ++ri) {
            if (ring_system[ri] == system_id) member_rings.push_back(static_cast<int>(ri));
        }
        std::vector<char> done(rings.size(), 0);
        for (std::size_t iter = 0; iter < member_rings.size(); ++iter) {
            // Prefer a pending ring with the most placed atoms.
            int best = -1, best_placed = -1;
            for (int ri : member_rings) {
                if (done[ri]) continue;
                int np = 0;
                for (int a : rings[ri]) np += placed[a] ? 1 : 0;
                if (np > best_placed) {
                    best_placed = np;
                    best = ri;
                }
            }
            if (best < 0) break;
            done[best] = 1;
            place_ring(rings[best]);
        }
    }
};

}  // namespace

std::vector<Point> layout_2d(const chem::Molecule& mol_in) {
    if (mol_in.atoms.empty()) throw LayoutError("cannot lay out an empty molecule");

    chem::Molecule mol = mol_in;  // ring perception mutates flags
    LayoutState st(mol);
    st.rings = mol.perceive_rings();
    st.coords.assign(mol.atoms.size(), Point{});
    st.placed.assign(mol.atoms.size(), 0);

    // Union rings sharing atoms into systems.
    const int nr = static_cast<int>(st.rings.size());
    st.ring_system.assign(nr, -1);
    st.atom_rings.assign(mol.atoms.size(), {});
    for (int ri = 0; ri < nr; ++ri) {
        for (int a : st.rings[ri]) st.atom_rings[a].push_back(ri);
    }
    int n_systems = 0;
    for (int ri = 0; ri < nr; ++ri) {
        if (st.ring_system[ri] >= 0) continue;
        const int sys = n_systems++;
        std::deque<int> q{ri};
        st.ring_system[ri] = sys;
        while (!q.empty()) {
            const int cur = q.front();
            q.pop_front();
            for (int a : st.rings[cur]) {
                for (int other : st.atom_rings[a]) {
                    if (st.ring_system[other] < 0) {
                        st.ring_system[other] = sys;
                        q.push_back(other);
                    }
                }
            }
        }
    }

    double component_offset_x = 0.0;
    const auto fragments = mol.fragments();
    for (const auto& frag : fragments) {
        const int seed = frag[0];

        if (!st.atom_rings[seed].empty()) {
            st.place_system(st.ring_system[st.atom_rings[seed][0]]);
        } else {
            st.set(seed, {0.0, 0.0});
        }

        // Sprout everything reachable, placing ring systems when entered.
        std::deque<int> queue;
        for (int a : frag) {
            if (st.placed[a]) queue.push_back(a);
        }
        std::set<int> queued(queue.begin(), queue.end());
        while (!queue.empty()) {
            const int a = queue.front();
            queue.pop_front();
            for (int bi : mol.bonds_of(a)) {
                const int nb = mol.other_end(bi, a);
                if (st.placed[nb]) continue;
                const Vec dir = st.free_direction(a);
                st.set(nb, st.pos(a) + dir);
                if (!st.atom_rings[nb].empty()) {
                    st.place_system(st.ring_system[st.atom_rings[nb][0]]);
                }
                for (int fa : frag) {
                    if (st.placed[fa] && !queued.count(fa)) {
                        queue.push_back(fa);
                        queued.insert(fa);
                    }
                }
            }
        }

        // Shift this fragment clear of previous ones.
        double min_x = 1e9, max_x = -1e9;
        for (int a : frag) {
            min_x = std::min(min_x, st.coords[a].x);
            max_x = std::max(max_x, st.coords[a].x);
        }
        for (int a : frag) st.coords[a].x += component_offset_x - min_x;
        component_offset_x += (max_x - min_x) + 1.8;
    }

    for (std::size_t i = 0; i < mol.atoms.size(); ++i) {
        if (!st.placed[i]) throw LayoutError("atom left unplaced by layout");
        if (!std::isfinite(st.coords[i].x) || !std::isfinite(st.coords[i].y)) {
            throw LayoutError("non-finite layout coordinate");
        }
    }
    return st.coords;
}

}  // namespace molscope::depict
