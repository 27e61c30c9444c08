#pragma once

// Reduction to a degree-regular k-partite core.
//
// Stages: (1) compute the pipeline constants from actual instance counts;
// (2) peel edges through heavy (k-1)- and (k-2)-tuples; (3) keep edges made
// transversal by a random k-partition (best of a few trials); (4) delete
// edges through low-degree (k-1)-side tuples, bucket the survivors by dyadic
// degree class, and keep the bucket whose edge share best clears its
// weighted threshold.  At finite sizes any inequality along the way can
// fail, so each step reports what it saw instead of assuming it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "families.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"

namespace propb {

struct PipelineConstants {
    int k = 0;
    int ell = 2;
    double epsilon = 0.0;
    double c1 = 0.0;  // edge count / n^(k-eps) of the input
    double c2 = 0.0;  // c1 / 2
    double c3 = 0.0;  // (k!/k^k) c2
    double c4 = 0.0;  // c3 / 2
    double c5 = 0.0;  // c4 * min(c4 / (4(l-1)), 1/8)

    static PipelineConstants from_instance(const Hypergraph& h, int ell, double epsilon) {
        PipelineConstants cs;
        cs.k = detail::uniform_arity(h);
        if (cs.k < 2) throw std::invalid_argument("PipelineConstants: empty or non-uniform input");
        if (ell < 2) throw std::invalid_argument("PipelineConstants: ell must be >= 2");
        cs.ell = ell;
        cs.epsilon = epsilon;
        const double n = h.vertex_count();
        cs.c1 = static_cast<double>(h.edge_count()) / std::pow(n, cs.k - epsilon);
        cs.c2 = cs.c1 / 2.0;
        double kfact = 1.0;
        for (int i = 2; i <= cs.k; ++i) kfact *= i;
        cs.c3 = kfact / std::pow(static_cast<double>(cs.k), cs.k) * cs.c2;
        cs.c4 = cs.c3 / 2.0;
        cs.c5 = cs.c4 * std::min(cs.c4 / (4.0 * (ell - 1)), 0.125);
        return cs;
    }
};

struct PartiteHypergraph {
    Hypergraph h;                 // transversal edges only
    int k = 0;
    std::vector<int> part_of;     // part id per vertex; part k-1 is the completion side
    double alpha = std::numeric_limits<double>::quiet_NaN();  // set by regularize_degrees
    double retained_fraction = 0.0;                           // kept / input edges
    PipelineConstants constants;

    // Vertices of edge e listed by part, parts 0..k-1.
    std::vector<int> by_part(std::size_t e) const {
        std::vector<int> out(static_cast<std::size_t>(k), -1);
        for (int v : h.edge(e)) out[part_of[v]] = v;
        return out;
    }
};

// Random partition into k parts, keeping edges with one vertex per part;
// best retained count over `trials` partitions wins (first on ties).
inline PartiteHypergraph k_partite_reduction(const Hypergraph& h, int trials, std::uint64_t seed) {
    const int k = detail::uniform_arity(h);
    if (k < 2) throw std::invalid_argument("k_partite_reduction: empty or non-uniform input");
    if (trials < 1) throw std::invalid_argument("k_partite_reduction: trials must be >= 1");
    const int n = h.vertex_count();
    Rng master(seed);

    std::vector<int> best_parts;
    long long best_kept = -1;
    std::vector<int> parts(static_cast<std::size_t>(n));
    for (int t = 0; t < trials; ++t) {
        Rng rng = master.child(static_cast<std::uint64_t>(t));
        for (int v = 0; v < n; ++v) parts[v] = rng.below_int(k);
        long long kept = 0;
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            unsigned mask = 0;
            for (int v : h.edge(e)) mask |= 1u << parts[v];
            if (mask == (1u << k) - 1) ++kept;
        }
        if (kept > best_kept) {
            best_kept = kept;
            best_parts = parts;
        }
    }

    PartiteHypergraph out;
    out.k = k;
    out.part_of = std::move(best_parts);
    std::vector<std::vector<int>> kept_edges;
    kept_edges.reserve(static_cast<std::size_t>(best_kept));
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        unsigned mask = 0;
        for (int v : h.edge(e)) mask |= 1u << out.part_of[v];
        if (mask == (1u << k) - 1) {
            auto sp = h.edge(e);
            kept_edges.emplace_back(sp.begin(), sp.end());
        }
    }
    out.h = Hypergraph(n, kept_edges);
    out.retained_fraction = h.edge_count() == 0
                                ? 0.0
                                : static_cast<double>(best_kept) / static_cast<double>(h.edge_count());
    return out;
}

struct DegreeBucket {
    int log2_floor = 0;          // degrees in [2^i, 2^(i+1))
    long long tuple_count = 0;
    long long edges_through = 0;
    double fraction = 0.0;       // edges_through / edges after the low-degree cleanup
    double threshold = 0.0;      // t_i
    double ratio = 0.0;          // fraction / threshold
};

struct RegularizeResult {
    bool failed = false;         // nothing survives the cleanup
    std::string note;
    PartiteHypergraph ph;        // the selected bucket's edges; alpha set
    long long input_edges = 0;
    long long kept_after_cleanup = 0;
    std::vector<DegreeBucket> buckets;
    int chosen_log2 = -1;
    bool pigeonhole_ok = false;  // the winning bucket's fraction met its threshold
};

// Low-degree cleanup plus dyadic bucket selection on (k-1)-side degrees.
// Every prefix (the k-1 vertices outside the completion part) ends up with
// degree in [2^i, 2^(i+1)) for the chosen i; alpha solves 2^i = n^(1-alpha).
inline RegularizeResult regularize_degrees(const PartiteHypergraph& ph, const PipelineConstants& cs) {
    const int k = ph.k;
    const int l = cs.ell;
    const double eps = cs.epsilon;
    const int n = ph.h.vertex_count();
    if (n < 2) throw std::invalid_argument("regularize_degrees: need n >= 2");
    const double nd = static_cast<double>(n);

    RegularizeResult out;
    out.input_edges = static_cast<long long>(ph.h.edge_count());

    std::unordered_map<std::vector<int>, long long, detail::IntVecHash> deg;
    std::vector<std::vector<int>> prefix_of(ph.h.edge_count());
    for (std::size_t e = 0; e < ph.h.edge_count(); ++e) {
        std::vector<int> p;
        p.reserve(static_cast<std::size_t>(k - 1));
        for (int v : ph.h.edge(e))
            if (ph.part_of[v] != k - 1) p.push_back(v);
        if (static_cast<int>(p.size()) != k - 1)
            throw std::invalid_argument("regularize_degrees: edge is not transversal");
        std::sort(p.begin(), p.end());
        deg[p] += 1;
        prefix_of[e] = std::move(p);
    }

    const double low = cs.c4 * std::pow(nd, 1.0 - eps);
    std::unordered_map<int, DegreeBucket> bucket_map;
    long long kept = 0;
    for (const auto& [p, d] : deg) {
        if (static_cast<double>(d) < low) continue;
        kept += d;
        int i = 0;
        while ((1LL << (i + 1)) <= d) ++i;
        auto& b = bucket_map[i];
        b.log2_floor = i;
        b.tuple_count += 1;
        b.edges_through += d;
    }
    out.kept_after_cleanup = kept;
    if (kept == 0) {
        out.failed = true;
        out.note = "no tuple survives the low-degree cleanup";
        return out;
    }

    const double d1 = 4.0 * (l - 1) / cs.c4 * std::pow(nd, -(1.0 - eps) / (l - 1));
    const double d2 = 8.0 * std::pow(nd, (l - 2) * (1.0 - eps / 2.0) / (l - 1));
    for (auto& [i, b] : bucket_map) {
        b.fraction = static_cast<double>(b.edges_through) / static_cast<double>(kept);
        b.threshold = std::pow(2.0, -static_cast<double>(i) / (l - 1)) / d1 +
                      std::pow(2.0, static_cast<double>(i) * (l - 2) / (l - 1)) / d2;
        b.ratio = b.fraction / b.threshold;
        out.buckets.push_back(b);
    }
    std::sort(out.buckets.begin(), out.buckets.end(),
              [](const DegreeBucket& a, const DegreeBucket& b) { return a.log2_floor < b.log2_floor; });
    const DegreeBucket* best = nullptr;
    for (const auto& b : out.buckets)
        if (!best || b.ratio > best->ratio) best = &b;
    out.chosen_log2 = best->log2_floor;
    out.pigeonhole_ok = best->fraction >= best->threshold;

    std::vector<std::vector<int>> kept_edges;
    kept_edges.reserve(static_cast<std::size_t>(best->edges_through));
    for (std::size_t e = 0; e < ph.h.edge_count(); ++e) {
        auto it = deg.find(prefix_of[e]);
        const long long d = it->second;
        if (static_cast<double>(d) < low) continue;
        int i = 0;
        while ((1LL << (i + 1)) <= d) ++i;
        if (i != out.chosen_log2) continue;
        auto sp = ph.h.edge(e);
        kept_edges.emplace_back(sp.begin(), sp.end());
    }

    out.ph.h = Hypergraph(n, kept_edges);
    out.ph.k = k;
    out.ph.part_of = ph.part_of;
    out.ph.retained_fraction = ph.retained_fraction;
    out.ph.constants = cs;
    out.ph.alpha = 1.0 - out.chosen_log2 * std::log(2.0) / std::log(nd);
    return out;
}

struct PipelineReport {
    PipelineConstants constants;
    long long input_edges = 0;
    long long after_km1 = 0;      // edges left once heavy (k-1)-tuple edges are gone
    long long after_km2 = 0;      // and heavy (k-2)-tuple edges (k >= 3)
    bool km_branch_ok = false;    // after removals, at least c2 n^(k-eps) edges remain
    bool partite_ok = false;      // transversal edges number at least c3 n^(k-eps)
    double delta_max = 0.0;
    PartiteHypergraph partition;  // after the random partition
    RegularizeResult regularized;
};

// Whole pipeline from a uniform hypergraph to its degree-regular core.
inline PipelineReport partite_pipeline(const Hypergraph& h, int ell, double epsilon, int trials,
                                       std::uint64_t seed) {
    PipelineReport rep;
    rep.constants = PipelineConstants::from_instance(h, ell, epsilon);
    const int k = rep.constants.k;
    const double nd = static_cast<double>(h.vertex_count());
    rep.input_edges = static_cast<long long>(h.edge_count());

    auto km1 = split_high_degree_km1(h, std::pow(nd, 1.0 - epsilon / 2.0));
    Hypergraph h1 = remove_edges_through(h, km1.tuples);
    rep.after_km1 = static_cast<long long>(h1.edge_count());

    rep.delta_max = ell * epsilon / (2.0 * (ell - 1));
    Hypergraph h2 = h1;
    if (k >= 3) {
        auto km2 = split_high_degree_km2(h1, rep.delta_max);
        h2 = remove_edges_through(h1, km2.tuples);
    }
    rep.after_km2 = static_cast<long long>(h2.edge_count());
    rep.km_branch_ok =
        static_cast<double>(rep.after_km2) >= rep.constants.c2 * std::pow(nd, k - epsilon);

    rep.partition = k_partite_reduction(h2, trials, seed);
    rep.partition.constants = rep.constants;
    rep.partite_ok = static_cast<double>(rep.partition.h.edge_count()) >=
                     rep.constants.c3 * std::pow(nd, k - epsilon);

    rep.regularized = regularize_degrees(rep.partition, rep.constants);
    return rep;
}

}  // namespace propb
