#pragma once

// Monochromatic-cluster feasibility.
//
// Question: does a proper 2-coloring exist in which each given cluster of
// vertices is monochromatic?  Contract each cluster to a single vertex and
// decide the contracted hypergraph; an edge whose image has fewer than two
// distinct vertices can never be bichromatic, so the answer is no outright.

#include <stdexcept>
#include <vector>

#include "decider.hpp"
#include "hypergraph.hpp"

namespace propb {

struct ClusterInstance {
    int n = 0;
    std::vector<std::vector<int>> clusters;  // pairwise disjoint, nonempty
    std::vector<std::vector<int>> r_edges;
};

inline DecisionResult cluster_feasible(const ClusterInstance& inst, const DeciderOptions& opts = {}) {
    const int n = inst.n;
    const int t = static_cast<int>(inst.clusters.size());
    std::vector<int> super(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < t; ++c) {
        if (inst.clusters[c].empty()) throw std::invalid_argument("cluster_feasible: empty cluster");
        for (int v : inst.clusters[c]) {
            if (v < 0 || v >= n) throw std::invalid_argument("cluster_feasible: vertex out of range");
            if (super[v] != -1) throw std::invalid_argument("cluster_feasible: overlapping clusters");
            super[v] = c;
        }
    }
    int next_id = t;
    for (int v = 0; v < n; ++v)
        if (super[v] == -1) super[v] = next_id++;

    std::vector<std::vector<int>> contracted;
    contracted.reserve(inst.r_edges.size());
    std::vector<int> image;
    for (const auto& e : inst.r_edges) {
        image.clear();
        for (int v : e) {
            if (v < 0 || v >= n) throw std::invalid_argument("cluster_feasible: edge vertex out of range");
            image.push_back(super[v]);
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (image.size() < 2) {
            // Edge inside one cluster: monochromatic under every admissible coloring.
            DecisionResult res;
            res.status = Decision::not_colorable;
            return res;
        }
        contracted.push_back(image);
    }

    DecisionResult inner = is_two_colorable(Hypergraph(next_id, contracted), opts);
    if (inner.status != Decision::colorable) return inner;

    DecisionResult res;
    res.status = Decision::colorable;
    res.nodes = inner.nodes;
    res.seconds = inner.seconds;
    Coloring w(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) w[v] = (*inner.witness)[super[v]];
    res.witness = std::move(w);
    return res;
}

}  // namespace propb
