#pragma once

// Reduction of a perturbed three-part instance to its Z-side core.
//
// With X all-1 and Y all-2 fixed, the extra l-sets collapse: sets inside X or
// Y are already monochromatic (no completion works), sets meeting both X and
// Y are already bichromatic (no constraint), a set with a single Z-vertex
// prescribes that vertex's color, and a set with two or more Z-vertices
// reduces to one ordinary graph edge on its two smallest Z-vertices (a
// stronger constraint, so feasibility transfers downward).  The residual
// problem - a graph plus color prescriptions - is solved exactly per
// component.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "decider.hpp"
#include "generators.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"

namespace propb {

struct PrescribedInstance {
    int n = 0;
    std::vector<std::uint8_t> marks;              // bit 0: color 1 prescribed; bit 1: color 2
    std::vector<std::array<int, 2>> pair_edges;   // distinct 2-sets, each {u,w} with u < w

    explicit PrescribedInstance(int n_ = 0) : n(n_), marks(static_cast<std::size_t>(n_), 0) {}

    void prescribe(int v, int color) { marks[v] |= color == 1 ? 1 : 2; }
    bool prescribed(int v) const { return marks[v] != 0; }
    bool has_conflict() const {
        for (auto m : marks)
            if (m == 3) return true;
        return false;
    }
};

struct ReductionStats {
    long long inside_x = 0;        // failure class: l-set entirely in X
    long long inside_y = 0;        // failure class: l-set entirely in Y
    long long crossing_xy = 0;     // meets X and Y: discarded
    long long prescribe_1 = 0;     // one Z-vertex, rest in Y
    long long prescribe_2 = 0;     // one Z-vertex, rest in X
    long long pair_sets = 0;       // two or more Z-vertices
    long long distinct_pairs = 0;  // pair_sets after deduplication
};

struct ReductionResult {
    bool failed = false;                // some l-set inside X or inside Y
    std::vector<int> offending;         // first such l-set, when failed
    ReductionStats stats;
    PrescribedInstance instance;        // meaningful only when !failed
};

inline ReductionResult reduce_to_prescribed(const XYZConstruction& c,
                                            const std::vector<std::vector<int>>& r) {
    ReductionResult out;
    out.instance = PrescribedInstance(c.n);
    std::set<std::array<int, 2>> pairs;
    for (const auto& set : r) {
        const int l = static_cast<int>(set.size());
        int cx = 0, cy = 0;
        int z_lo = -1, z_second = -1;
        int cz = 0;
        for (int v : set) {
            if (c.x.contains(v)) ++cx;
            else if (c.y.contains(v)) ++cy;
            else {
                ++cz;
                if (z_lo < 0 || v < z_lo) { z_second = z_lo; z_lo = v; }
                else if (z_second < 0 || v < z_second) z_second = v;
            }
        }
        if (cx == l) {
            ++out.stats.inside_x;
            if (!out.failed) { out.failed = true; out.offending = set; }
        } else if (cy == l) {
            ++out.stats.inside_y;
            if (!out.failed) { out.failed = true; out.offending = set; }
        } else if (cx > 0 && cy > 0) {
            ++out.stats.crossing_xy;
        } else if (cz == 1) {
            const int z = z_lo;
            if (cy == l - 1) { out.instance.prescribe(z, 1); ++out.stats.prescribe_1; }
            else             { out.instance.prescribe(z, 2); ++out.stats.prescribe_2; }
        } else {
            ++out.stats.pair_sets;
            pairs.insert({z_lo, z_second});
        }
    }
    out.instance.pair_edges.assign(pairs.begin(), pairs.end());
    out.stats.distinct_pairs = static_cast<long long>(pairs.size());
    return out;
}

// Exact feasibility for graph + prescriptions: 2-color each component by
// BFS, then pick the orientation (identity or flip) matching every
// prescription in the component; none fitting, or an odd cycle, or a doubly
// prescribed vertex means infeasible.
inline DecisionResult solve_prescribed(const PrescribedInstance& inst) {
    auto started = std::chrono::steady_clock::now();
    DecisionResult res;
    auto finish = [&](Decision d) {
        res.status = d;
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return res;
    };
    if (inst.has_conflict()) return finish(Decision::not_colorable);

    const int n = inst.n;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, w] : inst.pair_edges) {
        adj[u].push_back(w);
        adj[w].push_back(u);
    }

    Coloring colors(static_cast<std::size_t>(n), 0);
    std::vector<std::int8_t> side(static_cast<std::size_t>(n), -1);
    std::vector<int> queue, comp;
    for (int s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        queue.assign(1, s);
        comp.assign(1, s);
        side[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            ++res.nodes;
            for (int w : adj[u]) {
                if (side[w] < 0) {
                    side[w] = static_cast<std::int8_t>(1 - side[u]);
                    queue.push_back(w);
                    comp.push_back(w);
                } else if (side[w] == side[u]) {
                    return finish(Decision::not_colorable);  // odd cycle
                }
            }
        }
        bool identity_ok = true, flip_ok = true;
        for (int v : comp) {
            if (!inst.prescribed(v)) continue;
            const int want = inst.marks[v] == 1 ? 1 : 2;
            const int got_identity = side[v] == 0 ? 1 : 2;
            (got_identity == want ? flip_ok : identity_ok) = false;
        }
        if (!identity_ok && !flip_ok) return finish(Decision::not_colorable);
        for (int v : comp) {
            const int base = side[v] == 0 ? 1 : 2;
            colors[v] = static_cast<std::uint8_t>(identity_ok ? base : 3 - base);
        }
    }
    res.witness = std::move(colors);
    return finish(Decision::colorable);
}

// The almost-sure structure in the sparse regime: no doubly prescribed
// vertex, the pair graph is a forest, and no component sees two
// prescriptions.  Under it, feasibility always holds.
inline bool lemma1_condition_holds(const PrescribedInstance& inst) {
    if (inst.has_conflict()) return false;
    const int n = inst.n;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, w] : inst.pair_edges) {
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    std::vector<std::int8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        queue.assign(1, s);
        seen[s] = 1;
        long long verts = 0, degs = 0, prescriptions = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            ++verts;
            degs += static_cast<long long>(adj[u].size());
            if (inst.prescribed(u)) ++prescriptions;
            for (int w : adj[u])
                if (!seen[w]) { seen[w] = 1; queue.push_back(w); }
        }
        if (degs / 2 > verts - 1) return false;  // cycle in this component
        if (prescriptions > 1) return false;
    }
    return true;
}

// Lift a Z-side solution back to the full vertex set.
inline Coloring compose_xyz_witness(const XYZConstruction& c, const Coloring& z_side) {
    Coloring out(static_cast<std::size_t>(c.n), 0);
    for (int v = 0; v < c.n; ++v) {
        if (c.x.contains(v)) out[v] = 1;
        else if (c.y.contains(v)) out[v] = 2;
        else out[v] = z_side[v] == 0 ? 1 : z_side[v];
    }
    return out;
}

// Random instance of the residual problem itself: independent color-1 and
// color-2 prescriptions per vertex, independent pair edges.
inline PrescribedInstance sample_prescribed_instance(int n, double p1, double p2, double p3,
                                                     std::uint64_t seed) {
    Rng rng(seed);
    PrescribedInstance inst(n);
    for (int v = 0; v < n; ++v) {
        if (rng.bernoulli(p1)) inst.prescribe(v, 1);
        if (rng.bernoulli(p2)) inst.prescribe(v, 2);
    }
    if (p3 > 0.0 && n >= 2) {
        const unsigned __int128 total = binomial_exact(n, 2);
        if (p3 >= 1.0) {
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i) inst.pair_edges.push_back({i, j});
        } else {
            const double log_q = std::log1p(-p3);
            unsigned __int128 idx = 0;
            while (true) {
                double gap = std::floor(std::log(rng.unit_pos()) / log_q);
                if (gap >= static_cast<double>(total)) break;
                idx += static_cast<unsigned __int128>(gap) + 1;
                if (idx > total) break;
                // Colex unrank of slot idx-1: pair (i, j) has index C(j,2)+i.
                auto m = static_cast<long long>(idx - 1);
                int j = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0);
                while (static_cast<long long>(j) * (j - 1) / 2 > m) --j;
                while (static_cast<long long>(j + 1) * j / 2 <= m) ++j;
                int i = static_cast<int>(m - static_cast<long long>(j) * (j - 1) / 2);
                inst.pair_edges.push_back({i, j});
                if (idx == total) break;
            }
        }
    }
    return inst;
}

}  // namespace propb
