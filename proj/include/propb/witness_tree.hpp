#pragma once

// Witness trees.
//
// Over the degree-regular k-partite core, a witness tree has its root in
// part 0, branches ell ways per level by picking, for each node, the first
// batch l-set that lies inside the node's active extension set, and stops at
// level k-1.  Each root-to-leaf path P carries its completion set S = {w :
// P + {w} is an edge}.  The point of the shape: in any proper 2-coloring in
// which every child l-set is bichromatic, some root-to-leaf path is
// monochromatic, which forces that path's whole completion set onto the
// other color.  Growth records, per node, whether the expected number of
// active extensions was actually there; a shortage is reported, not assumed
// away.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "partite.hpp"

namespace propb {

// Per-size activity thresholds: an r-tuple is active when its degree is at
// least big_delta[r]; small_d[r] is the promised number of active one-vertex
// extensions of an active r-tuple (r <= k-2).
struct ActivityThresholds {
    int k = 0;
    std::vector<double> big_delta;  // valid for r = 1..k-1
    std::vector<double> small_d;    // valid for r = 1..k-2

    double delta(int r) const { return big_delta[static_cast<std::size_t>(r)]; }
    double d(int r) const { return small_d[static_cast<std::size_t>(r)]; }
};

inline ActivityThresholds compute_activity_thresholds(const PipelineConstants& cs, int n,
                                                      double alpha) {
    ActivityThresholds th;
    th.k = cs.k;
    th.big_delta.assign(static_cast<std::size_t>(cs.k), 0.0);
    th.small_d.assign(static_cast<std::size_t>(std::max(cs.k - 1, 1)), 0.0);
    const double nd = static_cast<double>(n);
    const double shift =
        (static_cast<double>(cs.ell - 2) / (cs.ell - 1)) * (alpha - cs.epsilon / 2.0);
    for (int r = 1; r <= cs.k - 1; ++r)
        th.big_delta[r] = cs.c5 / std::pow(2.0, r) * std::pow(nd, cs.k - r - cs.epsilon - shift);
    for (int r = 1; r <= cs.k - 2; ++r)
        th.small_d[r] = th.big_delta[r] / (4.0 * std::pow(nd, cs.k - r - 1 - alpha));
    return th;
}

// Number of sequential tree-growing stages the core supports.
inline int stage_count(const PipelineConstants& cs, int n, double alpha) {
    const double v = cs.c5 * std::pow(static_cast<double>(cs.ell), -static_cast<double>(cs.k)) *
                     std::pow(static_cast<double>(n),
                              (static_cast<double>(cs.ell) / (cs.ell - 1)) * (alpha - cs.epsilon / 2.0));
    if (!(v >= 1.0)) return 1;
    return static_cast<int>(std::min(std::floor(v), 1e6));
}

struct WitnessTreeNode {
    int vertex = -1;
    int parent = -1;  // node id; -1 for the root
    int level = 1;    // root is level 1, leaves are level k-1
};

struct ClaimViolation {
    int level = 0;
    int node = 0;
    long long found = 0;     // active extensions seen
    double required = 0.0;   // small_d at that level
};

struct WitnessTree {
    int k = 0, ell = 0;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    std::vector<WitnessTreeNode> nodes;        // [0] is the root
    std::vector<std::vector<int>> children;    // node -> child node ids (ell per internal node)
    std::vector<int> leaves;                   // node ids at level k-1, creation order
    std::vector<std::vector<int>> leaf_paths;  // per leaf: vertices from root to leaf
    std::vector<std::vector<int>> s_sets;      // per leaf: sorted completion set
    std::vector<ClaimViolation> claim_violations;
    bool s_window_ok = true;                   // every |S| in [n^(1-alpha), 2 n^(1-alpha)]

    std::vector<int> path_of(int node) const {
        std::vector<int> p;
        for (int u = node; u >= 0; u = nodes[u].parent) p.push_back(nodes[u].vertex);
        std::reverse(p.begin(), p.end());
        return p;
    }
};

enum class GrowFailure { none, no_root, batch_exhausted };

struct GrowResult {
    bool success = false;
    GrowFailure failure = GrowFailure::none;
    int fail_level = 0;
    std::vector<int> fail_path;
    WitnessTree tree;  // populated on success
};

// Batches of random l-sets, one list per level 1..k-2.
using BatchList = std::vector<std::vector<std::vector<int>>>;

inline GrowResult grow_witness_tree(const PartiteHypergraph& ph,
                                    const std::vector<std::uint32_t>& active_edges,
                                    const BatchList& batches, const ActivityThresholds& th) {
    const int k = ph.k;
    const int n = ph.h.vertex_count();
    if (k < 2) throw std::invalid_argument("grow_witness_tree: k must be >= 2");
    if (static_cast<int>(batches.size()) < k - 2)
        throw std::invalid_argument("grow_witness_tree: need a batch per level 1..k-2");

    GrowResult out;

    // Part-indexed view of each active edge.
    std::vector<int> bp(active_edges.size() * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < active_edges.size(); ++i) {
        for (int v : ph.h.edge(active_edges[i])) {
            const int part = ph.part_of[v];
            if (part < 0 || part >= k)
                throw std::invalid_argument("grow_witness_tree: vertex without a part");
            bp[i * k + part] = v;
        }
    }

    // Root: the smallest active vertex of part 0.
    std::unordered_map<int, long long> root_deg;
    for (std::size_t i = 0; i < active_edges.size(); ++i) root_deg[bp[i * k]] += 1;
    int root = -1;
    for (const auto& [v, d] : root_deg)
        if (static_cast<double>(d) >= th.delta(1) && (root < 0 || v < root)) root = v;
    if (root < 0) {
        out.failure = GrowFailure::no_root;
        out.fail_level = 0;
        return out;
    }

    WitnessTree tree;
    tree.k = k;
    tree.ell = static_cast<int>(ph.constants.ell);
    tree.alpha = ph.alpha;
    tree.nodes.push_back({root, -1, 1});
    tree.children.emplace_back();
    std::vector<int> current_level{0};

    std::vector<std::uint8_t> in_w(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= k - 2; ++j) {
        std::vector<int> next_level;
        for (int node_id : current_level) {
            const std::vector<int> path = tree.path_of(node_id);
            // Count part-j completions of this path, then keep the active ones.
            std::unordered_map<int, long long> cnt;
            for (std::size_t i = 0; i < active_edges.size(); ++i) {
                bool match = true;
                for (int a = 0; a < j; ++a)
                    if (bp[i * k + a] != path[a]) { match = false; break; }
                if (match) cnt[bp[i * k + j]] += 1;
            }
            std::vector<int> marked;
            long long w_size = 0;
            for (const auto& [x, d] : cnt)
                if (static_cast<double>(d) >= th.delta(j + 1)) {
                    in_w[x] = 1;
                    marked.push_back(x);
                    ++w_size;
                }
            if (static_cast<double>(w_size) < th.d(j))
                tree.claim_violations.push_back({j, node_id, w_size, th.d(j)});

            // First batch l-set lying inside the active extension set.
            const std::vector<int>* chosen = nullptr;
            for (const auto& set : batches[j - 1]) {
                bool inside = true;
                for (int x : set)
                    if (!in_w[x]) { inside = false; break; }
                if (inside) { chosen = &set; break; }
            }
            for (int x : marked) in_w[x] = 0;
            if (!chosen) {
                out.failure = GrowFailure::batch_exhausted;
                out.fail_level = j;
                out.fail_path = path;
                return out;
            }
            for (int x : *chosen) {
                const int id = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back({x, node_id, j + 1});
                tree.children.emplace_back();
                tree.children[node_id].push_back(id);
                next_level.push_back(id);
            }
        }
        current_level = std::move(next_level);
    }

    tree.leaves = current_level;
    const double lo = std::pow(static_cast<double>(n), 1.0 - tree.alpha) * (1.0 - 1e-9);
    const double hi = 2.0 * std::pow(static_cast<double>(n), 1.0 - tree.alpha) * (1.0 + 1e-9);
    for (int leaf : tree.leaves) {
        const std::vector<int> path = tree.path_of(leaf);
        std::vector<int> s;
        for (std::size_t i = 0; i < active_edges.size(); ++i) {
            bool match = true;
            for (int a = 0; a < k - 1; ++a)
                if (bp[i * k + a] != path[a]) { match = false; break; }
            if (match) s.push_back(bp[i * k + (k - 1)]);
        }
        std::sort(s.begin(), s.end());
        const double size = static_cast<double>(s.size());
        if (size < lo || size > hi) tree.s_window_ok = false;
        tree.leaf_paths.push_back(path);
        tree.s_sets.push_back(std::move(s));
    }

    out.success = true;
    out.tree = std::move(tree);
    return out;
}

inline GrowResult grow_witness_tree(const PartiteHypergraph& ph, const BatchList& batches,
                                    const ActivityThresholds& th) {
    std::vector<std::uint32_t> all(ph.h.edge_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    return grow_witness_tree(ph, all, batches, th);
}

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// Checks the tree against its hypergraph and batches: shape, batch
// membership of every child set, S = completion set of its path, and - by
// exhaustive enumeration over the tree's distinct vertices - the coloring
// property: bichromatic child sets everywhere force a monochromatic
// root-to-leaf path.
inline VerifyResult verify_witness(const WitnessTree& tree, const PartiteHypergraph& ph,
                                   const std::vector<std::uint32_t>& active_edges,
                                   const BatchList& batches) {
    auto fail = [](std::string why) { return VerifyResult{false, std::move(why)}; };
    const int k = tree.k;
    const int l = tree.ell;
    if (k < 2 || l < 2) return fail("degenerate parameters");

    long long expect_nodes = 0, p = 1;
    for (int lev = 1; lev <= k - 1; ++lev) { expect_nodes += p; p *= l; }
    if (static_cast<long long>(tree.nodes.size()) != expect_nodes)
        return fail("node count differs from a full tree");
    if (tree.nodes.empty() || tree.nodes[0].level != 1 || tree.nodes[0].parent != -1)
        return fail("malformed root");

    long long expect_leaves = 1;
    for (int i = 0; i < k - 2; ++i) expect_leaves *= l;
    if (static_cast<long long>(tree.leaves.size()) != expect_leaves)
        return fail("leaf count differs from ell^(k-2)");

    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        const auto& node = tree.nodes[id];
        if (node.level < 1 || node.level > k - 1) return fail("node level out of range");
        if (id > 0) {
            if (node.parent < 0 || node.parent >= static_cast<int>(id))
                return fail("bad parent pointer");
            if (tree.nodes[node.parent].level + 1 != node.level)
                return fail("level does not increase by one");
        }
        const bool internal = node.level < k - 1;
        if (internal && static_cast<int>(tree.children[id].size()) != l)
            return fail("internal node without ell children");
        if (!internal && !tree.children[id].empty()) return fail("leaf with children");
    }

    // Child sets must appear in the level's batch.
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        if (tree.children[id].empty()) continue;
        const int level = tree.nodes[id].level;
        if (static_cast<int>(batches.size()) < level) return fail("missing batch for a level");
        std::vector<int> set;
        for (int c : tree.children[id]) set.push_back(tree.nodes[c].vertex);
        std::sort(set.begin(), set.end());
        bool found = false;
        for (const auto& b : batches[level - 1]) {
            std::vector<int> bs(b);
            std::sort(bs.begin(), bs.end());
            if (bs == set) { found = true; break; }
        }
        if (!found) return fail("child set not present in its batch");
    }

    // Paths and completion sets against the hypergraph.
    if (tree.leaf_paths.size() != tree.leaves.size() || tree.s_sets.size() != tree.leaves.size())
        return fail("leaf bookkeeping sizes disagree");
    std::vector<int> bp(static_cast<std::size_t>(k));
    for (std::size_t li = 0; li < tree.leaves.size(); ++li) {
        const std::vector<int> path = tree.path_of(tree.leaves[li]);
        if (path != tree.leaf_paths[li]) return fail("stored path differs from parent walk");
        if (static_cast<int>(path.size()) != k - 1) return fail("path length is not k-1");
        std::vector<int> s;
        for (std::uint32_t e : active_edges) {
            std::fill(bp.begin(), bp.end(), -1);
            for (int v : ph.h.edge(e)) bp[ph.part_of[v]] = v;
            bool match = true;
            for (int a = 0; a < k - 1; ++a)
                if (bp[a] != path[a]) { match = false; break; }
            if (match) s.push_back(bp[k - 1]);
        }
        std::sort(s.begin(), s.end());
        if (s != tree.s_sets[li]) return fail("stored S differs from the completion set");
    }

    // The coloring property, checked over all 2^V colorings of the tree's
    // distinct vertices.
    std::vector<int> verts;
    for (const auto& node : tree.nodes) verts.push_back(node.vertex);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() > 24) return fail("enumeration guard: more than 24 distinct vertices");
    std::unordered_map<int, int> slot;
    for (std::size_t i = 0; i < verts.size(); ++i) slot[verts[i]] = static_cast<int>(i);

    for (std::uint64_t mask = 0; mask < (1ull << verts.size()); ++mask) {
        auto color_of = [&](int vertex) { return (mask >> slot.at(vertex)) & 1ull; };
        bool constrained = true;
        for (std::size_t id = 0; id < tree.nodes.size() && constrained; ++id) {
            if (tree.children[id].empty()) continue;
            bool all_same = true;
            const auto first = color_of(tree.nodes[tree.children[id][0]].vertex);
            for (int c : tree.children[id])
                if (color_of(tree.nodes[c].vertex) != first) { all_same = false; break; }
            if (all_same) constrained = false;  // a monochromatic child set: coloring is excused
        }
        if (!constrained) continue;
        bool mono_path = false;
        for (const auto& path : tree.leaf_paths) {
            bool mono = true;
            const auto first = color_of(path[0]);
            for (int v : path)
                if (color_of(v) != first) { mono = false; break; }
            if (mono) { mono_path = true; break; }
        }
        if (!mono_path)
            return fail("a coloring defeats the tree: bichromatic child sets, no monochromatic path");
    }
    return {true, ""};
}

inline VerifyResult verify_witness(const WitnessTree& tree, const PartiteHypergraph& ph,
                                   const BatchList& batches) {
    std::vector<std::uint32_t> all(ph.h.edge_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    return verify_witness(tree, ph, all, batches);
}

}  // namespace propb
