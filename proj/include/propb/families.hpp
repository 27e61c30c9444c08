#pragma once

// Degree-based splitting and greedy family extraction.
//
// The splits classify (k-1)- and (k-2)-tuples by degree so callers can peel
// off the edges that go through heavy tuples.  Family extraction works on a
// graph: inside a scratch copy, repeatedly take the maximum-degree vertex,
// record its neighborhood, and delete all edges incident to that
// neighborhood; a family closes once the squared degrees collected so far
// reach (1/4) n^(2-delta).  Only the family's own vertices (with their
// edges) then leave the graph for good - the scratch deletions are not kept,
// so the next family starts from everything the closed families left behind.

#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypergraph.hpp"

namespace propb {

namespace detail {
struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Requires a uniform hypergraph; returns its arity (0 when empty).
inline int uniform_arity(const Hypergraph& h) {
    if (h.edge_count() == 0) return 0;
    int k = h.arity(0);
    for (std::size_t i = 1; i < h.edge_count(); ++i)
        if (h.arity(i) != k)
            throw std::invalid_argument("expected a uniform hypergraph");
    return k;
}

template <typename Fn>
void for_each_subset(std::span<const std::int32_t> e, int r, Fn&& fn) {
    const int m = static_cast<int>(e.size());
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[i] = i;
    std::vector<int> pick(static_cast<std::size_t>(r));
    while (true) {
        for (int i = 0; i < r; ++i) pick[i] = e[idx[i]];
        fn(pick);
        int i = r - 1;
        while (i >= 0 && idx[i] == m - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

struct TupleDegreeSplit {
    std::vector<std::vector<int>> tuples;  // the flagged tuples, sorted
    long long edges_through = 0;           // edges containing at least one of them
};

namespace detail {
template <typename Pred>
TupleDegreeSplit split_by_tuple_degree(const Hypergraph& h, int r, Pred&& heavy) {
    TupleDegreeSplit out;
    if (h.edge_count() == 0) return out;
    std::unordered_map<std::vector<int>, long long, IntVecHash> deg;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for_each_subset(h.edge(i), r, [&](const std::vector<int>& t) { deg[t] += 1; });
    std::unordered_set<std::vector<int>, IntVecHash> flagged;
    for (const auto& [t, d] : deg)
        if (heavy(d)) flagged.insert(t);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        bool hit = false;
        for_each_subset(h.edge(i), r, [&](const std::vector<int>& t) {
            if (!hit && flagged.count(t)) hit = true;
        });
        if (hit) ++out.edges_through;
    }
    out.tuples.assign(flagged.begin(), flagged.end());
    std::sort(out.tuples.begin(), out.tuples.end());
    return out;
}
}  // namespace detail

// (k-1)-tuples with degree strictly above `threshold`.
inline TupleDegreeSplit split_high_degree_km1(const Hypergraph& h, double threshold) {
    const int k = detail::uniform_arity(h);
    if (k == 0) return {};
    return detail::split_by_tuple_degree(h, k - 1,
                                         [&](long long d) { return static_cast<double>(d) > threshold; });
}

// (k-2)-tuples with degree at least n^(2 - delta_max).
inline TupleDegreeSplit split_high_degree_km2(const Hypergraph& h, double delta_max) {
    const int k = detail::uniform_arity(h);
    if (k == 0) return {};
    if (k < 3) throw std::invalid_argument("split_high_degree_km2: needs arity >= 3");
    const double threshold = std::pow(static_cast<double>(h.vertex_count()), 2.0 - delta_max);
    return detail::split_by_tuple_degree(h, k - 2,
                                         [&](long long d) { return static_cast<double>(d) >= threshold; });
}

// Edges that contain none of the given r-tuples (tuples must share one size).
inline Hypergraph remove_edges_through(const Hypergraph& h, const std::vector<std::vector<int>>& tuples) {
    if (tuples.empty()) return h;
    const int r = static_cast<int>(tuples.front().size());
    std::unordered_set<std::vector<int>, detail::IntVecHash> bad;
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != r)
            throw std::invalid_argument("remove_edges_through: mixed tuple sizes");
        std::vector<int> s(t);
        std::sort(s.begin(), s.end());
        bad.insert(std::move(s));
    }
    std::vector<std::vector<int>> kept;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        if (static_cast<int>(e.size()) < r) {
            kept.emplace_back(e.begin(), e.end());
            continue;
        }
        bool hit = false;
        detail::for_each_subset(e, r, [&](const std::vector<int>& t) {
            if (!hit && bad.count(t)) hit = true;
        });
        if (!hit) kept.emplace_back(e.begin(), e.end());
    }
    return Hypergraph(h.vertex_count(), kept);
}

struct FamilyMember {
    int vertex = -1;
    long long degree = 0;               // degree at the moment of selection
    std::vector<int> neighborhood;      // neighborhood at the moment of selection
};

struct FamilyExtraction {
    double delta = 0.0;
    int ell = 2;
    bool precondition_failed = false;   // input had fewer than n^(2-delta) edges
    bool stopped_early = false;         // graph ran dry before the family target
    long long target = 0;               // requested number of families
    std::vector<std::vector<FamilyMember>> families;
    std::vector<std::uint8_t> ended_by_bound;  // per family: closed by the sum-of-squares bound
    std::vector<double> sum_sq;                // per family: sum of d_i^2
    std::vector<double> sum_pow_ell;           // per family: sum of d_i^ell
};

inline FamilyExtraction extract_families(const Hypergraph& g, double delta, int ell) {
    if (detail::uniform_arity(g) > 2)
        throw std::invalid_argument("extract_families: expects a graph (arity 2)");
    const int n = g.vertex_count();
    const double nd = static_cast<double>(n);

    FamilyExtraction out;
    out.delta = delta;
    out.ell = ell;
    // The relative guard keeps inputs sitting exactly on the bound (16 edges
    // vs 8^(4/3), say) from flipping the flag on pow() rounding.
    out.precondition_failed = static_cast<double>(g.edge_count()) <
                              std::pow(nd, 2.0 - delta) * (1.0 - 1e-12);
    out.target = std::max<long long>(
        1, static_cast<long long>(std::floor(0.5 * std::pow(nd, 1.0 - delta))));

    std::vector<std::set<int>> master(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        auto e = g.edge(i);
        master[e[0]].insert(e[1]);
        master[e[1]].insert(e[0]);
    }

    const double bound = 0.25 * std::pow(nd, 2.0 - delta);
    for (long long j = 0; j < out.target; ++j) {
        std::vector<std::set<int>> adj = master;  // scratch copy for this family
        std::vector<FamilyMember> family;
        double sum_sq = 0.0, sum_pow = 0.0;
        bool by_bound = false;
        while (true) {
            int best = -1;
            std::size_t best_deg = 0;
            for (int v = 0; v < n; ++v)
                if (adj[v].size() > best_deg) { best = v; best_deg = adj[v].size(); }
            if (best < 0) break;  // no edges left for this family

            FamilyMember m;
            m.vertex = best;
            m.degree = static_cast<long long>(best_deg);
            m.neighborhood.assign(adj[best].begin(), adj[best].end());
            sum_sq += static_cast<double>(m.degree) * static_cast<double>(m.degree);
            sum_pow += std::pow(static_cast<double>(m.degree), static_cast<double>(ell));

            // Delete every edge incident to the recorded neighborhood (this
            // covers the chosen vertex too: all its edges end there).
            for (int u : m.neighborhood) {
                for (int w : adj[u]) adj[w].erase(u);
                adj[u].clear();
            }
            family.push_back(std::move(m));
            if (sum_sq >= bound) { by_bound = true; break; }
        }
        if (family.empty()) {
            out.stopped_early = true;
            break;
        }
        // Only the family's vertices and their edges leave for good.
        for (const auto& m : family) {
            for (int w : master[m.vertex]) master[w].erase(m.vertex);
            master[m.vertex].clear();
        }
        out.families.push_back(std::move(family));
        out.ended_by_bound.push_back(by_bound ? 1 : 0);
        out.sum_sq.push_back(sum_sq);
        out.sum_pow_ell.push_back(sum_pow);
    }
    return out;
}

}  // namespace propb
