#include <catch2/catch_amalgamated.hpp>

#include <propb/witness_tree.hpp>

#include <cmath>
#include <vector>

using Catch::Approx;
using propb::ActivityThresholds;
using propb::BatchList;
using propb::GrowFailure;
using propb::Hypergraph;
using propb::PartiteHypergraph;
using propb::PipelineConstants;

TEST_CASE("activity threshold formulas") {
    SECTION("pair case: the shift term vanishes") {
        PipelineConstants cs;
        cs.k = 3;
        cs.ell = 2;
        cs.epsilon = 1.0;
        cs.c5 = 1.0;
        const auto th = propb::compute_activity_thresholds(cs, 100, 0.5);
        REQUIRE(th.delta(1) == Approx(50.0));
        REQUIRE(th.delta(2) == Approx(0.25));
        REQUIRE(th.d(1) == Approx(1.25));
    }

    SECTION("triple case with a nonzero shift") {
        PipelineConstants cs;
        cs.k = 4;
        cs.ell = 3;
        cs.epsilon = 0.5;
        cs.c5 = 2.0;
        const auto th = propb::compute_activity_thresholds(cs, 16, 0.75);
        REQUIRE(th.delta(1) == Approx(512.0));
        REQUIRE(th.delta(2) == Approx(16.0));
        REQUIRE(th.delta(3) == Approx(0.5));
        REQUIRE(th.d(1) == Approx(4.0));
        REQUIRE(th.d(2) == Approx(2.0));
    }
}

TEST_CASE("stage count") {
    PipelineConstants cs;
    cs.k = 3;
    cs.ell = 2;
    cs.epsilon = 1.0;
    cs.c5 = 1.0;
    REQUIRE(propb::stage_count(cs, 16, 1.0) == 2);     // (1/8) * 16^1
    REQUIRE(propb::stage_count(cs, 16, 0.5) == 1);     // value below one
    cs.c5 = 1e12;
    REQUIRE(propb::stage_count(cs, 16, 1.0) == 1000000);  // clamped
}

namespace {

// Nine vertices in parts {0,1} / {2,3,4,5} / {6,7,8}; vertex 0 carries all
// five edges, extensions 2 and 3 carry two each, extension 4 only one.
PartiteHypergraph tiny_core() {
    PartiteHypergraph ph;
    ph.h = Hypergraph(9, {{0, 2, 6}, {0, 2, 7}, {0, 3, 7}, {0, 3, 8}, {0, 4, 6}});
    ph.k = 3;
    ph.part_of = {0, 0, 1, 1, 1, 1, 2, 2, 2};
    ph.alpha = 1.0 - std::log(2.0) / std::log(9.0);  // 9^(1-alpha) = 2
    ph.constants.k = 3;
    ph.constants.ell = 2;
    return ph;
}

ActivityThresholds tiny_thresholds() {
    ActivityThresholds th;
    th.k = 3;
    th.big_delta = {0.0, 4.0, 2.0};
    th.small_d = {0.0, 2.0};
    return th;
}

}  // namespace

TEST_CASE("growing a tree over the tiny core") {
    const auto ph = tiny_core();
    const auto th = tiny_thresholds();
    const BatchList batches{{{4, 5}, {2, 4}, {2, 3}}};

    const auto res = propb::grow_witness_tree(ph, batches, th);
    REQUIRE(res.success);
    REQUIRE(res.failure == GrowFailure::none);
    const auto& tree = res.tree;

    // Root 0 (degree 5 >= 4); the first batch pair inside the active set
    // {2, 3} is the third one.
    REQUIRE(tree.nodes.size() == 3);
    REQUIRE(tree.nodes[0].vertex == 0);
    REQUIRE(tree.children[0] == std::vector<int>{1, 2});
    REQUIRE(tree.nodes[1].vertex == 2);
    REQUIRE(tree.nodes[2].vertex == 3);
    REQUIRE(tree.leaves == std::vector<int>{1, 2});
    REQUIRE(tree.leaf_paths ==
            std::vector<std::vector<int>>{{0, 2}, {0, 3}});
    REQUIRE(tree.s_sets == std::vector<std::vector<int>>{{6, 7}, {7, 8}});
    REQUIRE(tree.claim_violations.empty());
    REQUIRE(tree.s_window_ok);  // |S| = 2 = 9^(1-alpha)

    const auto check = propb::verify_witness(tree, ph, batches);
    REQUIRE(check.ok);
}

TEST_CASE("growth failures are reported with their location") {
    const auto ph = tiny_core();

    SECTION("no active root") {
        auto th = tiny_thresholds();
        th.big_delta[1] = 10.0;
        const auto res = propb::grow_witness_tree(ph, {{{2, 3}}}, th);
        REQUIRE_FALSE(res.success);
        REQUIRE(res.failure == GrowFailure::no_root);
        REQUIRE(res.fail_level == 0);
    }

    SECTION("batch without a usable set") {
        const auto res = propb::grow_witness_tree(ph, {{{4, 5}}}, tiny_thresholds());
        REQUIRE_FALSE(res.success);
        REQUIRE(res.failure == GrowFailure::batch_exhausted);
        REQUIRE(res.fail_level == 1);
        REQUIRE(res.fail_path == std::vector<int>{0});
    }

    SECTION("a shortfall against the promised extension count is recorded") {
        auto th = tiny_thresholds();
        th.small_d[1] = 3.0;
        const auto res = propb::grow_witness_tree(ph, {{{2, 3}}}, th);
        REQUIRE(res.success);
        REQUIRE(res.tree.claim_violations.size() == 1);
        REQUIRE(res.tree.claim_violations[0].level == 1);
        REQUIRE(res.tree.claim_violations[0].node == 0);
        REQUIRE(res.tree.claim_violations[0].found == 2);
        REQUIRE(res.tree.claim_violations[0].required == Approx(3.0));
    }

    SECTION("restricting the active edge set changes what is active") {
        // Without edge {0,2,7}, extension 2 has degree 1 < 2.
        const std::vector<std::uint32_t> active{0, 2, 3, 4};
        const auto res =
            propb::grow_witness_tree(ph, active, {{{4, 5}, {2, 4}, {2, 3}}}, tiny_thresholds());
        REQUIRE_FALSE(res.success);
        REQUIRE(res.failure == GrowFailure::batch_exhausted);
    }
}

TEST_CASE("verification rejects tampered trees") {
    const auto ph = tiny_core();
    const auto th = tiny_thresholds();
    const BatchList batches{{{4, 5}, {2, 4}, {2, 3}}};
    const auto grown = propb::grow_witness_tree(ph, batches, th);
    REQUIRE(grown.success);

    SECTION("altered completion set") {
        auto tree = grown.tree;
        tree.s_sets[0] = {6, 8};
        const auto check = propb::verify_witness(tree, ph, batches);
        REQUIRE_FALSE(check.ok);
        REQUIRE(check.reason == "stored S differs from the completion set");
    }

    SECTION("child swapped for a vertex outside the batch") {
        auto tree = grown.tree;
        tree.nodes[1].vertex = 4;
        const auto check = propb::verify_witness(tree, ph, batches);
        REQUIRE_FALSE(check.ok);
        REQUIRE(check.reason == "child set not present in its batch");
    }

    SECTION("missing node") {
        auto tree = grown.tree;
        tree.nodes.pop_back();
        tree.children.pop_back();
        const auto check = propb::verify_witness(tree, ph, batches);
        REQUIRE_FALSE(check.ok);
        REQUIRE(check.reason == "node count differs from a full tree");
    }

    SECTION("stored path out of sync") {
        auto tree = grown.tree;
        tree.leaf_paths[1] = {0, 2};
        const auto check = propb::verify_witness(tree, ph, batches);
        REQUIRE_FALSE(check.ok);
        REQUIRE(check.reason == "stored path differs from parent walk");
    }
}
