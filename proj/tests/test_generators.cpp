#include <catch2/catch_amalgamated.hpp>

#include <propb/generators.hpp>
#include <propb/hypergraph.hpp>
#include <propb/rng.hpp>

#include <cmath>
#include <set>
#include <vector>

using propb::Hypergraph;
using propb::PerturbationSpec;
using propb::XYZConstruction;

TEST_CASE("three-part sizes and edge counts") {
    // n=100, eps=0.8: |X| = |Y| = ceil(100^0.6) = 16, |Z| = 68.
    const XYZConstruction c(100, 3, 0.8);
    REQUIRE(c.x.size() == 16);
    REQUIRE(c.y.size() == 16);
    REQUIRE(c.z.size() == 68);
    REQUIRE(c.edge_count() == 16LL * 16 * 68);  // 17408

    const Hypergraph h = propb::build_xyz(c);
    REQUIRE(h.edge_count() == 17408);

    // Exact powers must not round up: 64^(1-1/2) = 8 exactly.
    REQUIRE(XYZConstruction(64, 3, 1.0).x.size() == 8);

    // eps=0 wants |X| = n, impossible next to a same-sized Y.
    REQUIRE_THROWS_AS(XYZConstruction(50, 3, 0.0), std::invalid_argument);
    // k-2 completion vertices must exist.
    REQUIRE_THROWS_AS(XYZConstruction::from_part_size(8, 6, 3), std::invalid_argument);
}

TEST_CASE("three-part edges carry one X, one Y, k-2 Z vertices") {
    const XYZConstruction c = XYZConstruction::from_part_size(12, 4, 3);
    const Hypergraph h = propb::build_xyz(c);
    REQUIRE(static_cast<long long>(h.edge_count()) == c.edge_count());
    REQUIRE(c.edge_count() == 3LL * 3 * propb::binomial_ll(6, 2));
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        int in_x = 0, in_y = 0, in_z = 0;
        for (int v : h.edge(i)) {
            if (c.x.contains(v)) ++in_x;
            else if (c.y.contains(v)) ++in_y;
            else ++in_z;
        }
        REQUIRE(in_x == 1);
        REQUIRE(in_y == 1);
        REQUIRE(in_z == 2);
    }
    // X all 1, Y all 2 is proper whatever Z does.
    propb::Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        propb::Coloring col(12);
        for (int v = 0; v < 12; ++v) {
            if (c.x.contains(v)) col[v] = 1;
            else if (c.y.contains(v)) col[v] = 2;
            else col[v] = rng.bernoulli(0.5) ? 1 : 2;
        }
        REQUIRE(propb::is_proper(h, col));
    }
}

TEST_CASE("disjoint complete bipartite components") {
    propb::ComponentLayout one;
    one.sides = {{2, 2}};
    REQUIRE(propb::build_components(one, 4).edge_count() == 4);

    propb::ComponentLayout matching;
    matching.sides = {{1, 1}, {1, 1}, {1, 1}};
    const Hypergraph m = propb::build_components(matching, 6);
    REQUIRE(m.edge_count() == 3);
    REQUIRE(m.has_edge({0, 1}));
    REQUIRE(m.has_edge({2, 3}));
    REQUIRE(m.has_edge({4, 5}));

    propb::ComponentLayout four;
    four.sides = {{4, 4}, {4, 4}, {4, 4}, {4, 4}};
    REQUIRE(propb::build_components(four, 32).edge_count() == 64);

    propb::ComponentLayout bad;
    bad.sides = {{1, 2}};
    REQUIRE_THROWS_AS(propb::build_components(bad, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(propb::build_components(one, 3), std::invalid_argument);
}

TEST_CASE("fixed-count perturbations collapse duplicates") {
    const auto spec = PerturbationSpec::fixed_count(500, 2, 11);
    const auto fam = propb::sample_perturbation(10, spec);
    REQUIRE(fam.size() <= 45);  // C(10,2)
    std::set<std::vector<int>> seen(fam.begin(), fam.end());
    REQUIRE(seen.size() == fam.size());
    for (const auto& s : fam) {
        REQUIRE(s.size() == 2);
        REQUIRE(s[0] < s[1]);
        REQUIRE(s[0] >= 0);
        REQUIRE(s[1] < 10);
    }
    // Same seed, same family.
    REQUIRE(propb::sample_perturbation(10, spec) == fam);

    // 10^4 draws over the 190 pairs of a 20-set: the chance any pair stays
    // unseen is ~190 * (1 - 1/190)^10000 ~ 2e-21.
    const auto all = propb::sample_perturbation(
        20, PerturbationSpec::fixed_count(10000, 2, 77));
    REQUIRE(all.size() == 190);
}

TEST_CASE("independent-inclusion perturbations") {
    REQUIRE(propb::sample_perturbation(4, PerturbationSpec::bernoulli(1.0, 2, 3)).size() == 6);
    REQUIRE(propb::sample_perturbation(30, PerturbationSpec::bernoulli(0.0, 3, 3)).empty());

    // Mean family size is p * C(n, l); 400 pairs expected here, sd ~19.6.
    const auto fam = propb::sample_perturbation(200, PerturbationSpec::bernoulli(0.02, 2, 19));
    REQUIRE(fam.size() > 300);
    REQUIRE(fam.size() < 500);

    REQUIRE_THROWS_AS(PerturbationSpec::bernoulli(1.5, 2, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(propb::sample_perturbation(1, PerturbationSpec::fixed_count(1, 2, 0)),
                      std::invalid_argument);
}

TEST_CASE("draw-count and inclusion models meet in the sparse regime") {
    // With m draws out of C = C(n,l) slots, the expected number of distinct
    // sets is C(1 - (1-1/C)^m); the inclusion model at p = m/C expects m.
    // At m = 0.02 C the two means differ by under 2%.
    const int n = 40;
    const long long C = propb::binomial_ll(n, 2);  // 780
    const long long m = 16;                        // ~0.0205 C
    const double mean_draws =
        static_cast<double>(C) * (1.0 - std::pow(1.0 - 1.0 / static_cast<double>(C),
                                                 static_cast<double>(m)));
    const double mean_incl = static_cast<double>(m);
    REQUIRE(std::abs(mean_draws - mean_incl) / mean_incl < 0.02);

    // Empirical means track their analytic values (300 samples; the distinct
    // count never exceeds m, so a 3-sigma band on each side suffices).
    const int reps = 300;
    double sum_draws = 0.0, sum_incl = 0.0;
    for (int i = 0; i < reps; ++i) {
        sum_draws += static_cast<double>(
            propb::sample_perturbation(n, PerturbationSpec::fixed_count(m, 2, 1000 + i)).size());
        sum_incl += static_cast<double>(
            propb::sample_perturbation(
                n, PerturbationSpec::bernoulli(static_cast<double>(m) / static_cast<double>(C), 2,
                                               5000 + i))
                .size());
    }
    const double se_incl = std::sqrt(mean_incl) / std::sqrt(static_cast<double>(reps));
    REQUIRE(std::abs(sum_draws / reps - mean_draws) < 3.0 * se_incl);
    REQUIRE(std::abs(sum_incl / reps - mean_incl) < 3.0 * se_incl);
}

TEST_CASE("uniform random hypergraphs hit the requested size") {
    const Hypergraph h = propb::random_uniform(12, 3, 30, 99);
    REQUIRE(h.vertex_count() == 12);
    REQUIRE(h.edge_count() == 30);
    for (std::size_t i = 0; i < h.edge_count(); ++i) REQUIRE(h.arity(i) == 3);
    REQUIRE(propb::random_uniform(12, 3, 30, 99) == h);
    REQUIRE(propb::random_uniform(12, 3, 30, 100) != h);

    // Dense request takes the enumerate-and-shuffle path.
    const Hypergraph dense = propb::random_uniform(6, 2, 14, 7);
    REQUIRE(dense.edge_count() == 14);
    REQUIRE(propb::random_uniform(6, 2, 15, 7).edge_count() == 15);
    REQUIRE_THROWS_AS(propb::random_uniform(6, 2, 16, 7), std::invalid_argument);
}

TEST_CASE("perturbing merges the family into the edge set") {
    const Hypergraph base(6, {{0, 1, 2}});
    const Hypergraph out = propb::perturb(base, {{3, 4}, {0, 1, 2}});
    REQUIRE(out.edge_count() == 2);
    REQUIRE(out.has_edge({3, 4}));
}
