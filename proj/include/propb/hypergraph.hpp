#pragma once

// Core hypergraph representation.
//
// Edges with mixed arities live in one immutable object (a fixed structure
// plus its random perturbation, say).  Storage is a flat vertex array with
// offsets; every edge is kept sorted and the edge list itself is sorted
// lexicographically and deduplicated, so equality of hypergraphs is equality
// of the flat arrays.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace propb {

// Colors are 1 and 2; index = vertex.
using Coloring = std::vector<std::uint8_t>;

// Sorted set of distinct vertices, used to query degrees/neighborhoods.
class VertexTuple {
public:
    VertexTuple() = default;
    VertexTuple(std::initializer_list<int> vs) : members_(vs) { normalize(); }
    explicit VertexTuple(std::vector<int> vs) : members_(std::move(vs)) { normalize(); }

    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<int>& members() const { return members_; }

private:
    void normalize() {
        if (members_.empty()) throw std::invalid_argument("VertexTuple: empty tuple");
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw std::invalid_argument("VertexTuple: repeated vertex");
        if (members_.front() < 0) throw std::invalid_argument("VertexTuple: negative vertex");
    }

    std::vector<int> members_;
};

class Hypergraph {
public:
    Hypergraph() = default;

    Hypergraph(int n, const std::vector<std::vector<int>>& edges) : n_(n) {
        if (n < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
        std::vector<std::vector<int>> es;
        es.reserve(edges.size());
        for (const auto& e : edges) {
            if (e.size() < 2) throw std::invalid_argument("Hypergraph: edge arity must be >= 2");
            std::vector<int> s(e);
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::invalid_argument("Hypergraph: repeated vertex in edge");
            if (s.front() < 0 || s.back() >= n)
                throw std::invalid_argument("Hypergraph: vertex out of range");
            es.push_back(std::move(s));
        }
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        off_.reserve(es.size() + 1);
        off_.push_back(0);
        for (const auto& e : es) {
            flat_.insert(flat_.end(), e.begin(), e.end());
            off_.push_back(static_cast<std::uint32_t>(flat_.size()));
        }
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return off_.empty() ? 0 : off_.size() - 1; }

    std::span<const std::int32_t> edge(std::size_t i) const {
        return {flat_.data() + off_[i], flat_.data() + off_[i + 1]};
    }
    int arity(std::size_t i) const { return static_cast<int>(off_[i + 1] - off_[i]); }

    int max_arity() const {
        int k = 0;
        for (std::size_t i = 0; i < edge_count(); ++i) k = std::max(k, arity(i));
        return k;
    }

    // Total incidence size (sum of arities).
    std::size_t incidence_size() const { return flat_.size(); }

    std::vector<std::vector<int>> edges() const {
        std::vector<std::vector<int>> out(edge_count());
        for (std::size_t i = 0; i < edge_count(); ++i) {
            auto e = edge(i);
            out[i].assign(e.begin(), e.end());
        }
        return out;
    }

    bool has_edge(const std::vector<int>& e) const {
        std::vector<int> s(e);
        std::sort(s.begin(), s.end());
        std::size_t lo = 0, hi = edge_count();
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            auto m = edge(mid);
            if (std::lexicographical_compare(m.begin(), m.end(), s.begin(), s.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == edge_count()) return false;
        auto m = edge(lo);
        return std::equal(m.begin(), m.end(), s.begin(), s.end());
    }

    bool operator==(const Hypergraph& o) const {
        return n_ == o.n_ && flat_ == o.flat_ && off_ == o.off_;
    }

    // Union with extra edges.  Linear-time merge against re-normalizing from
    // scratch; the hot path when a fixed structure is perturbed many times.
    Hypergraph with_edges(const std::vector<std::vector<int>>& extra) const {
        std::vector<std::vector<int>> es;
        es.reserve(extra.size());
        for (const auto& e : extra) {
            if (e.size() < 2) throw std::invalid_argument("with_edges: edge arity must be >= 2");
            std::vector<int> s(e);
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::invalid_argument("with_edges: repeated vertex in edge");
            if (s.front() < 0 || s.back() >= n_)
                throw std::invalid_argument("with_edges: vertex out of range");
            es.push_back(std::move(s));
        }
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());

        Hypergraph out;
        out.n_ = n_;
        out.flat_.reserve(flat_.size() + es.size() * 4);
        out.off_.reserve(edge_count() + es.size() + 1);
        out.off_.push_back(0);
        std::size_t i = 0, j = 0;
        auto push = [&out](std::span<const std::int32_t> e) {
            out.flat_.insert(out.flat_.end(), e.begin(), e.end());
            out.off_.push_back(static_cast<std::uint32_t>(out.flat_.size()));
        };
        auto as_span = [](const std::vector<int>& v) {
            return std::span<const std::int32_t>(v.data(), v.size());
        };
        while (i < edge_count() && j < es.size()) {
            auto a = edge(i);
            auto b = as_span(es[j]);
            if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) {
                push(a); ++i;
            } else if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
                push(b); ++j;
            } else {
                push(a); ++i; ++j;
            }
        }
        for (; i < edge_count(); ++i) push(edge(i));
        for (; j < es.size(); ++j) push(as_span(es[j]));
        return out;
    }

private:
    int n_ = 0;
    std::vector<std::int32_t> flat_;
    std::vector<std::uint32_t> off_;
};

namespace detail {
// a (sorted) subset-of test against a sorted edge.
inline bool tuple_in_edge(const std::vector<int>& a, std::span<const std::int32_t> e) {
    std::size_t j = 0;
    for (int v : a) {
        while (j < e.size() && e[j] < v) ++j;
        if (j == e.size() || e[j] != v) return false;
        ++j;
    }
    return true;
}
}  // namespace detail

// Number of edges containing the tuple (any arity).
inline long long degree(const Hypergraph& h, const VertexTuple& a) {
    long long d = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        if (detail::tuple_in_edge(a.members(), h.edge(i))) ++d;
    return d;
}

// Number of arity-k edges containing the tuple.
inline long long degree(const Hypergraph& h, const VertexTuple& a, int k) {
    long long d = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        if (h.arity(i) == k && detail::tuple_in_edge(a.members(), h.edge(i))) ++d;
    return d;
}

// For a (k-1)-tuple a: vertices w such that a + {w} is an arity-k edge.
inline std::vector<int> neighborhood(const Hypergraph& h, const VertexTuple& a, int k) {
    if (a.size() != k - 1)
        throw std::invalid_argument("neighborhood: tuple must have k-1 vertices");
    std::vector<int> out;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if (h.arity(i) != k || !detail::tuple_in_edge(a.members(), h.edge(i))) continue;
        for (int v : h.edge(i)) {
            if (!std::binary_search(a.members().begin(), a.members().end(), v)) {
                out.push_back(v);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// For a (k-2)-tuple a: the graph of pairs {u,w} with a + {u,w} an arity-k edge.
inline Hypergraph link(const Hypergraph& h, const VertexTuple& a, int k) {
    if (a.size() != k - 2)
        throw std::invalid_argument("link: tuple must have k-2 vertices");
    std::vector<std::vector<int>> pairs;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if (h.arity(i) != k || !detail::tuple_in_edge(a.members(), h.edge(i))) continue;
        std::vector<int> rest;
        for (int v : h.edge(i))
            if (!std::binary_search(a.members().begin(), a.members().end(), v))
                rest.push_back(v);
        pairs.push_back(std::move(rest));  // exactly two vertices
    }
    return Hypergraph(h.vertex_count(), pairs);
}

// True when no edge is monochromatic.  The coloring must assign every vertex.
inline bool is_proper(const Hypergraph& h, const Coloring& c) {
    if (static_cast<int>(c.size()) != h.vertex_count())
        throw std::invalid_argument("is_proper: coloring size mismatch");
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        bool mono = true;
        for (std::size_t j = 1; j < e.size(); ++j)
            if (c[e[j]] != c[e[0]]) { mono = false; break; }
        if (mono) return false;
    }
    return true;
}

}  // namespace propb
