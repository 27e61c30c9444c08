#pragma once

// Exact 2-colorability decision.
//
// Backtracking over a fixed variable order (degree descending, index
// ascending) with unit propagation: an edge whose unassigned count drops to
// one while all assigned vertices share a color forces the opposite color.
// Connected components are solved independently and the first decision in a
// component is pinned to color 1 (colors are symmetric within a component).
// A node budget turns long searches into an explicit third outcome instead
// of an open-ended run.

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypergraph.hpp"

namespace propb {

enum class Decision { colorable, not_colorable, undecided };

struct DecisionResult {
    Decision status = Decision::undecided;
    std::optional<Coloring> witness;  // proper coloring, present iff colorable
    std::uint64_t nodes = 0;          // decisions tried
    double seconds = 0.0;

    bool colorable() const { return status == Decision::colorable; }
};

struct DeciderOptions {
    std::uint64_t node_budget = 50'000'000;
};

namespace detail {

class NaeSolver {
public:
    explicit NaeSolver(const Hypergraph& h) : h_(h), n_(h.vertex_count()), m_(h.edge_count()) {
        cnt1_.assign(m_, 0);
        cnt2_.assign(m_, 0);
        unassigned_.assign(m_, 0);
        color_.assign(static_cast<std::size_t>(n_), 0);
        // vertex -> incident edge ids (CSR).
        std::vector<std::uint32_t> deg(static_cast<std::size_t>(n_) + 1, 0);
        for (std::size_t e = 0; e < m_; ++e) {
            unassigned_[e] = static_cast<std::int32_t>(h.arity(e));
            for (int v : h.edge(e)) ++deg[static_cast<std::size_t>(v) + 1];
        }
        inc_off_.assign(deg.begin(), deg.end());
        for (std::size_t v = 1; v < inc_off_.size(); ++v) inc_off_[v] += inc_off_[v - 1];
        inc_.resize(h.incidence_size());
        std::vector<std::uint32_t> cursor(inc_off_.begin(), inc_off_.end() - 1);
        for (std::size_t e = 0; e < m_; ++e)
            for (int v : h.edge(e)) inc_[cursor[v]++] = static_cast<std::uint32_t>(e);
    }

    DecisionResult run(std::uint64_t budget) {
        auto started = std::chrono::steady_clock::now();
        DecisionResult res;
        res.status = Decision::colorable;

        // Decision order: degree descending, index ascending.
        std::vector<int> order(static_cast<std::size_t>(n_));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return vertex_degree(a) > vertex_degree(b);
        });

        // Component ids via union-find over edges.
        std::vector<int> parent(static_cast<std::size_t>(n_));
        std::iota(parent.begin(), parent.end(), 0);
        std::vector<int> rank_(static_cast<std::size_t>(n_), 0);
        auto find = [&](int v) {
            while (parent[v] != v) { parent[v] = parent[parent[v]]; v = parent[v]; }
            return v;
        };
        auto unite = [&](int a, int b) {
            a = find(a); b = find(b);
            if (a == b) return;
            if (rank_[a] < rank_[b]) std::swap(a, b);
            parent[b] = a;
            if (rank_[a] == rank_[b]) ++rank_[a];
        };
        for (std::size_t e = 0; e < m_; ++e) {
            auto edge = h_.edge(e);
            for (std::size_t i = 1; i < edge.size(); ++i) unite(edge[0], edge[i]);
        }

        std::vector<std::uint8_t> comp_done(static_cast<std::size_t>(n_), 0);
        for (int root_v : order) {
            if (vertex_degree(root_v) == 0) { color_[root_v] = 1; continue; }
            int rep = find(root_v);
            if (comp_done[rep]) continue;
            comp_done[rep] = 1;
            if (!solve_component(order, parent, rep, budget, res.nodes)) {
                res.status = budget_hit_ ? Decision::undecided : Decision::not_colorable;
                break;
            }
        }

        if (res.status == Decision::colorable) {
            Coloring w(color_.begin(), color_.end());
            for (auto& c : w)
                if (c == 0) c = 1;
            res.witness = std::move(w);
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return res;
    }

private:
    long long vertex_degree(int v) const { return inc_off_[v + 1] - inc_off_[v]; }

    // Assign v := c and propagate; false on conflict (caller unwinds trail).
    bool assign(int v, std::uint8_t c) {
        pending_.clear();
        pending_.emplace_back(v, c);
        while (!pending_.empty()) {
            auto [u, col] = pending_.back();
            pending_.pop_back();
            if (color_[u] != 0) {
                if (color_[u] == col) continue;
                return false;
            }
            color_[u] = col;
            trail_.push_back(u);
            // Counts must end up consistent with the trail even on conflict —
            // undo_to() reverses every incident edge of a trail vertex — so a
            // detected conflict only stops the forcing, not the count updates.
            bool conflict = false;
            for (std::uint32_t i = inc_off_[u]; i < inc_off_[u + 1]; ++i) {
                std::uint32_t e = inc_[i];
                (col == 1 ? cnt1_ : cnt2_)[e] += 1;
                unassigned_[e] -= 1;
                if (conflict) continue;
                const bool one_sided = cnt1_[e] == 0 || cnt2_[e] == 0;
                if (!one_sided) continue;
                if (unassigned_[e] == 0) { conflict = true; continue; }  // monochromatic
                if (unassigned_[e] == 1) {
                    std::uint8_t forced = cnt1_[e] == 0 ? 1 : 2;
                    for (int w : h_.edge(e))
                        if (color_[w] == 0) { pending_.emplace_back(w, forced); break; }
                }
            }
            if (conflict) return false;
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            int v = trail_.back();
            trail_.pop_back();
            std::uint8_t c = color_[v];
            color_[v] = 0;
            for (std::uint32_t i = inc_off_[v]; i < inc_off_[v + 1]; ++i) {
                std::uint32_t e = inc_[i];
                (c == 1 ? cnt1_ : cnt2_)[e] -= 1;
                unassigned_[e] += 1;
            }
        }
    }

    struct Frame {
        int vertex;
        std::size_t mark;      // trail size before this decision
        std::size_t scan;      // order index where the search for `vertex` began
        std::uint8_t tried;    // colors attempted so far
        bool pinned;           // component root: color 2 is not a separate case
    };

    bool solve_component(const std::vector<int>& order, std::vector<int>& parent, int rep,
                         std::uint64_t budget, std::uint64_t& nodes) {
        auto find = [&](int v) {
            while (parent[v] != v) { parent[v] = parent[parent[v]]; v = parent[v]; }
            return v;
        };
        auto next_unassigned = [&](std::size_t from) {
            for (std::size_t i = from; i < order.size(); ++i) {
                int v = order[i];
                if (color_[v] == 0 && vertex_degree(v) > 0 && find(v) == rep) return i;
            }
            return order.size();
        };

        std::vector<Frame> stack;
        std::size_t scan = next_unassigned(0);
        while (true) {
            if (scan == order.size()) return true;  // component fully colored
            int v = order[scan];
            Frame f{v, trail_.size(), scan, 0, stack.empty()};
            // Try color 1, then (unless pinned) color 2; on failure backtrack.
            bool descended = false;
            while (true) {
                std::uint8_t c = f.tried == 0 ? 1 : 2;
                if (f.tried >= (f.pinned ? 1 : 2)) {
                    // Both options exhausted: pop.
                    if (stack.empty()) return false;
                    f = stack.back();
                    stack.pop_back();
                    undo_to(f.mark);
                    continue;
                }
                f.tried += 1;
                if (++nodes > budget) { budget_hit_ = true; return false; }
                if (assign(f.vertex, c)) {
                    stack.push_back(f);
                    scan = next_unassigned(f.scan + 1);
                    descended = true;
                    break;
                }
                undo_to(f.mark);
            }
            if (!descended) return false;  // unreachable; keeps the loop shape obvious
        }
    }

    const Hypergraph& h_;
    int n_;
    std::size_t m_;
    std::vector<std::uint32_t> inc_off_, inc_;
    std::vector<std::int32_t> cnt1_, cnt2_, unassigned_;
    std::vector<std::uint8_t> color_;
    std::vector<int> trail_;
    std::vector<std::pair<int, std::uint8_t>> pending_;
    bool budget_hit_ = false;
};

}  // namespace detail

inline DecisionResult is_two_colorable(const Hypergraph& h, const DeciderOptions& opts = {}) {
    detail::NaeSolver solver(h);
    return solver.run(opts.node_budget);
}

// Reference decision by enumeration; the first vertex is pinned to halve the
// space.  Guarded so it cannot be reached with an instance it cannot finish.
inline DecisionResult brute_force_two_colorable(const Hypergraph& h) {
    const int n = h.vertex_count();
    if (n > 24) throw std::invalid_argument("brute_force_two_colorable: n > 24");
    auto started = std::chrono::steady_clock::now();
    DecisionResult res;

    std::vector<std::uint32_t> edge_bits;
    edge_bits.reserve(h.edge_count());
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        std::uint32_t b = 0;
        for (int v : h.edge(e)) b |= 1u << v;
        edge_bits.push_back(b);
    }

    const std::uint64_t space = n == 0 ? 1 : 1ull << (n - 1);
    for (std::uint64_t m = 0; m < space; ++m) {
        ++res.nodes;
        const std::uint32_t colors2 = static_cast<std::uint32_t>(m << 1);  // bit v set: color 2
        bool ok = true;
        for (std::uint32_t eb : edge_bits) {
            const std::uint32_t inter = colors2 & eb;
            if (inter == 0 || inter == eb) { ok = false; break; }
        }
        if (ok) {
            Coloring w(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) w[v] = (colors2 >> v) & 1 ? 2 : 1;
            res.status = Decision::colorable;
            res.witness = std::move(w);
            res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            return res;
        }
    }
    res.status = Decision::not_colorable;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return res;
}

}  // namespace propb
