#pragma once

// Plain-text hypergraph files.
//
// Line 1: "n m".  Then m lines, each "s v1 ... vs" with 0-based vertex ids.
// Writing normalizes (sorted edges, sorted edge list), reading accepts any
// vertex order.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypergraph.hpp"

namespace propb {

inline Hypergraph read_hypergraph(std::istream& in) {
    long long n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("hypergraph read: bad header, expected 'n m'");
    if (n < 0 || m < 0) throw std::runtime_error("hypergraph read: negative header value");
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long s = 0;
        if (!(in >> s))
            throw std::runtime_error("hypergraph read: missing arity on edge " + std::to_string(i));
        if (s < 2) throw std::runtime_error("hypergraph read: arity < 2 on edge " + std::to_string(i));
        std::vector<int> e(static_cast<std::size_t>(s));
        for (auto& v : e)
            if (!(in >> v))
                throw std::runtime_error("hypergraph read: truncated edge " + std::to_string(i));
        edges.push_back(std::move(e));
    }
    return Hypergraph(static_cast<int>(n), edges);
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.vertex_count() << ' ' << h.edge_count() << '\n';
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        out << e.size();
        for (int v : e) out << ' ' << v;
        out << '\n';
    }
}

inline Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_hypergraph(in);
}

inline void save_hypergraph(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_hypergraph(out, h);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace propb
