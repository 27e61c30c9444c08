#pragma once

// Instance generators: structured 2-colorable bases and random perturbations.

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypergraph.hpp"
#include "rng.hpp"

namespace propb {

struct IndexRange {
    int begin = 0;
    int end = 0;  // half-open
    int size() const { return end - begin; }
    bool contains(int v) const { return begin <= v && v < end; }
};

// Three-part template on [n]: X = [0,|X|), Y next, Z the rest.  Edges are all
// k-sets with exactly one vertex in X, one in Y and k-2 in Z, so coloring X
// with 1 and Y with 2 is proper no matter how Z is completed.
struct XYZConstruction {
    int n = 0;
    int k = 0;
    double epsilon = 0.0;
    IndexRange x, y, z;

    // Part sizes |X| = |Y| = ceil(n^(1-eps/2)).
    XYZConstruction(int n_, int k_, double eps) : n(n_), k(k_), epsilon(eps) {
        if (n < 1 || k < 2) throw std::invalid_argument("XYZConstruction: need n >= 1, k >= 2");
        double v = std::pow(static_cast<double>(n), 1.0 - eps / 2.0);
        int xy = static_cast<int>(std::ceil(v * (1.0 - 1e-12)));
        if (xy < 1) xy = 1;
        init_parts(xy);
    }

    static XYZConstruction from_part_size(int n, int k, int xy_size, double eps = 0.0) {
        XYZConstruction c;
        c.n = n;
        c.k = k;
        c.epsilon = eps;
        if (n < 1 || k < 2 || xy_size < 1)
            throw std::invalid_argument("XYZConstruction: need n >= 1, k >= 2, |X| >= 1");
        c.init_parts(xy_size);
        return c;
    }

    long long edge_count() const {
        return static_cast<long long>(x.size()) * y.size() * binomial_ll(z.size(), k - 2);
    }

private:
    XYZConstruction() = default;

    void init_parts(int xy) {
        if (2LL * xy > n)
            throw std::invalid_argument("XYZConstruction: 2|X| exceeds n");
        x = {0, xy};
        y = {xy, 2 * xy};
        z = {2 * xy, n};
        if (z.size() < k - 2)
            throw std::invalid_argument("XYZConstruction: |Z| < k-2, no edges possible");
    }
};

namespace detail {
// Calls fn on every r-combination of pool, in lexicographic order.
template <typename Fn>
void for_each_combination(const std::vector<int>& pool, int r, Fn&& fn) {
    const int m = static_cast<int>(pool.size());
    if (r == 0) {
        fn(std::vector<int>{});
        return;
    }
    if (r > m) return;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    std::vector<int> pick(r);
    while (true) {
        for (int i = 0; i < r; ++i) pick[i] = pool[idx[i]];
        fn(pick);
        int i = r - 1;
        while (i >= 0 && idx[i] == m - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

inline Hypergraph build_xyz(const XYZConstruction& c) {
    std::vector<int> zs(c.z.size());
    for (int i = 0; i < c.z.size(); ++i) zs[i] = c.z.begin + i;
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(c.edge_count()));
    detail::for_each_combination(zs, c.k - 2, [&](const std::vector<int>& zpart) {
        std::vector<int> e(static_cast<std::size_t>(c.k));
        std::copy(zpart.begin(), zpart.end(), e.begin() + 2);
        for (int xi = c.x.begin; xi < c.x.end; ++xi) {
            e[0] = xi;
            for (int yi = c.y.begin; yi < c.y.end; ++yi) {
                e[1] = yi;
                edges.push_back(e);
            }
        }
    });
    return Hypergraph(c.n, edges);
}

// Disjoint complete bipartite graphs K_{a_i,b_i}; dense yet 2-colorable.
struct ComponentLayout {
    std::vector<std::pair<int, int>> sides;  // (a_i, b_i), a_i >= b_i >= 1
};

inline Hypergraph build_components(const ComponentLayout& layout, int n) {
    long long used = 0;
    for (auto [a, b] : layout.sides) {
        if (b < 1 || a < b) throw std::invalid_argument("build_components: need a >= b >= 1");
        used += a + b;
    }
    if (used > n) throw std::invalid_argument("build_components: parts exceed n");
    std::vector<std::vector<int>> edges;
    int base = 0;
    for (auto [a, b] : layout.sides) {
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                edges.push_back({base + i, base + a + j});
        base += a + b;
    }
    return Hypergraph(n, edges);
}

// Random family of l-sets: either a fixed number of draws with replacement
// (duplicates collapse), or independent inclusion of every l-set.
struct PerturbationSpec {
    enum class Model { fixed_count, bernoulli };
    Model model = Model::fixed_count;
    long long count = 0;
    double prob = 0.0;
    int ell = 2;
    std::uint64_t seed = 0;

    static PerturbationSpec fixed_count(long long m, int ell, std::uint64_t seed) {
        if (m < 0) throw std::invalid_argument("PerturbationSpec: negative count");
        PerturbationSpec s;
        s.model = Model::fixed_count;
        s.count = m;
        s.ell = ell;
        s.seed = seed;
        return s;
    }
    static PerturbationSpec bernoulli(double p, int ell, std::uint64_t seed) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("PerturbationSpec: p outside [0,1]");
        PerturbationSpec s;
        s.model = Model::bernoulli;
        s.prob = p;
        s.ell = ell;
        s.seed = seed;
        return s;
    }
};

namespace detail {
inline std::vector<int> sample_distinct(int n, int r, Rng& rng) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(r));
    while (static_cast<int>(out.size()) < r) {
        int v = rng.below_int(n);
        bool dup = false;
        for (int u : out)
            if (u == v) { dup = true; break; }
        if (!dup) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace detail

// The sampled family, as a sorted list of distinct sorted l-sets.
inline std::vector<std::vector<int>> sample_perturbation(int n, const PerturbationSpec& spec) {
    const int l = spec.ell;
    if (l < 2) throw std::invalid_argument("sample_perturbation: ell must be >= 2");
    if (l > n) throw std::invalid_argument("sample_perturbation: ell exceeds n");
    Rng rng(spec.seed);
    std::set<std::vector<int>> family;

    if (spec.model == PerturbationSpec::Model::fixed_count) {
        for (long long i = 0; i < spec.count; ++i)
            family.insert(detail::sample_distinct(n, l, rng));
    } else {
        const unsigned __int128 total = binomial_exact(n, l);
        const double expected = spec.prob * static_cast<double>(total);
        if (expected > 5e7)
            throw std::invalid_argument("sample_perturbation: expected family size too large");
        if (total <= 1000000) {
            // Small universe: walk every l-set and flip a coin for each.
            std::vector<int> all(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) all[i] = i;
            detail::for_each_combination(all, l, [&](const std::vector<int>& s) {
                if (rng.bernoulli(spec.prob)) family.insert(s);
            });
        } else {
            auto hits = count_bernoulli_successes(total, spec.prob, rng);
            // Conditioned on its size, a Bernoulli family is uniform among
            // families of that size; draw that many distinct l-sets.
            while (family.size() < static_cast<std::size_t>(hits))
                family.insert(detail::sample_distinct(n, l, rng));
        }
    }
    return {family.begin(), family.end()};
}

inline Hypergraph perturb(const Hypergraph& h, const std::vector<std::vector<int>>& r) {
    return h.with_edges(r);
}

// Exactly m distinct k-sets, uniform among such families.
inline Hypergraph random_uniform(int n, int k, long long m, std::uint64_t seed) {
    if (k < 2 || k > n) throw std::invalid_argument("random_uniform: need 2 <= k <= n");
    const unsigned __int128 total = binomial_exact(n, k);
    if (static_cast<unsigned __int128>(m) > total)
        throw std::invalid_argument("random_uniform: m exceeds number of k-sets");
    Rng rng(seed);
    std::set<std::vector<int>> family;
    if (total <= 200000 && static_cast<unsigned __int128>(m) * 2 > total) {
        // Dense request: enumerate and keep a random m-subset.
        std::vector<std::vector<int>> all;
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[i] = i;
        detail::for_each_combination(pool, k, [&](const std::vector<int>& s) { all.push_back(s); });
        for (long long i = 0; i < m; ++i) {
            auto j = i + static_cast<long long>(rng.below(all.size() - i));
            std::swap(all[i], all[j]);
        }
        all.resize(static_cast<std::size_t>(m));
        return Hypergraph(n, all);
    }
    while (family.size() < static_cast<std::size_t>(m))
        family.insert(detail::sample_distinct(n, k, rng));
    return Hypergraph(n, {family.begin(), family.end()});
}

}  // namespace propb
