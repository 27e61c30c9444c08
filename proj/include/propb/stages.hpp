#pragma once

// Sequential witness-tree stages and the closing cluster search.
//
// Stage i grows a tree against the edges still alive; on success the edges
// touching any of its completion sets are retired, which keeps completion
// sets of later stages disjoint from earlier ones.  In any proper 2-coloring
// of the combined hypergraph (core + every batch + the final random sets),
// each successful tree forces one of its completion sets monochromatic, so
// the instance is 2-colorable only if some choice of one set per successful
// stage is feasible as a monochromatic-cluster problem.  Exhausting every
// choice infeasibly is therefore a sound non-2-colorability verdict; when
// the choice space is sampled instead, no negative verdict is issued.

#include <cstdint>
#include <optional>
#include <vector>

#include "clusters.hpp"
#include "generators.hpp"
#include "witness_tree.hpp"

namespace propb {

struct StageBatches {
    std::vector<BatchList> per_stage;         // per stage: one l-set list per level 1..k-2
    std::vector<std::vector<int>> final_sets; // the closing batch of random l-sets
};

// Splits a total random-set budget evenly over t stages x (k-2) levels plus
// the final batch (which also takes the remainder).
inline StageBatches make_stage_batches(int n, int k, int ell, int t, long long total,
                                       std::uint64_t seed) {
    if (t < 1) throw std::invalid_argument("make_stage_batches: t must be >= 1");
    if (total < 0) throw std::invalid_argument("make_stage_batches: negative total");
    const long long slots = static_cast<long long>(t) * std::max(k - 2, 0) + 1;
    const long long share = total / slots;
    StageBatches out;
    out.per_stage.resize(static_cast<std::size_t>(t));
    std::uint64_t salt = 0;
    for (int i = 0; i < t; ++i) {
        out.per_stage[i].resize(static_cast<std::size_t>(std::max(k - 2, 0)));
        for (int j = 0; j < k - 2; ++j)
            out.per_stage[i][j] = sample_perturbation(
                n, PerturbationSpec::fixed_count(share, ell, derive_seed(seed, salt++)));
    }
    const long long final_share = total - share * (slots - 1);
    out.final_sets = sample_perturbation(
        n, PerturbationSpec::fixed_count(final_share, ell, derive_seed(seed, salt++)));
    return out;
}

struct StageRecord {
    bool success = false;
    GrowFailure failure = GrowFailure::none;
    int fail_level = 0;
    WitnessTree tree;            // populated on success
    bool verified = false;       // verify_witness outcome (successful stages only)
    std::string verify_reason;
    long long edges_before = 0;
    long long edges_removed = 0;
    int claim_violations = 0;
};

enum class StageVerdict {
    non_two_colorable,       // every choice of completion sets is infeasible (exhaustive only)
    colorable,               // some choice is feasible; witness attached
    inconclusive_no_success, // no stage produced a tree
    inconclusive_sampled     // sampled choice space, nothing feasible found
};

struct StageOutcome {
    std::vector<StageRecord> stages;
    int successes = 0;
    StageVerdict verdict = StageVerdict::inconclusive_no_success;
    std::optional<Coloring> witness;     // for the combined hypergraph, when colorable
    Hypergraph combined;                 // core + all batches + final sets
    bool exhaustive = false;
    long long choices_tested = 0;
    double choice_space = 0.0;           // q^m, q = ell^(k-2), m = verified successes
    ClusterInstance decisive_instance;   // feasible choice if any, else the last one tested
};

inline StageOutcome run_stages(const PartiteHypergraph& ph, const StageBatches& batches,
                               const ActivityThresholds& th, const DeciderOptions& opts = {},
                               long long choice_cap = 1LL << 20, std::uint64_t sample_seed = 0) {
    const int k = ph.k;
    const int t = static_cast<int>(batches.per_stage.size());
    StageOutcome out;

    std::vector<std::uint32_t> active(ph.h.edge_count());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = static_cast<std::uint32_t>(i);

    std::vector<const WitnessTree*> trees;
    for (int i = 0; i < t; ++i) {
        StageRecord rec;
        rec.edges_before = static_cast<long long>(active.size());
        GrowResult grown = grow_witness_tree(ph, active, batches.per_stage[i], th);
        rec.success = grown.success;
        rec.failure = grown.failure;
        rec.fail_level = grown.fail_level;
        if (grown.success) {
            rec.tree = std::move(grown.tree);
            rec.claim_violations = static_cast<int>(rec.tree.claim_violations.size());
            VerifyResult v = verify_witness(rec.tree, ph, active, batches.per_stage[i]);
            rec.verified = v.ok;
            rec.verify_reason = v.reason;

            // Retire edges touching any completion set of this stage.
            std::vector<std::uint8_t> hit(static_cast<std::size_t>(ph.h.vertex_count()), 0);
            for (const auto& s : rec.tree.s_sets)
                for (int v2 : s) hit[v2] = 1;
            std::vector<std::uint32_t> still;
            still.reserve(active.size());
            for (std::uint32_t e : active) {
                bool touched = false;
                for (int v2 : ph.h.edge(e))
                    if (hit[v2]) { touched = true; break; }
                if (!touched) still.push_back(e);
            }
            rec.edges_removed = static_cast<long long>(active.size() - still.size());
            active = std::move(still);
        }
        out.stages.push_back(std::move(rec));
    }
    for (const auto& rec : out.stages)
        if (rec.success && rec.verified) {
            ++out.successes;
            trees.push_back(&rec.tree);
        }

    // Combined hypergraph: the core plus every random l-set that was drawn.
    std::vector<std::vector<int>> extra;
    for (const auto& stage : batches.per_stage)
        for (const auto& level : stage) extra.insert(extra.end(), level.begin(), level.end());
    extra.insert(extra.end(), batches.final_sets.begin(), batches.final_sets.end());
    out.combined = ph.h.with_edges(extra);
    const auto combined_edges = out.combined.edges();

    if (trees.empty()) {
        out.verdict = StageVerdict::inconclusive_no_success;
        out.choice_space = 1.0;  // empty product: no successes, nothing to choose
        return out;
    }

    const int m = static_cast<int>(trees.size());
    long long q = 1;
    for (int i = 0; i < k - 2; ++i) q *= static_cast<long long>(ph.constants.ell);
    out.choice_space = std::pow(static_cast<double>(q), m);
    out.exhaustive = out.choice_space <= static_cast<double>(choice_cap);

    auto try_choice = [&](const std::vector<int>& choice) {
        ClusterInstance inst;
        inst.n = ph.h.vertex_count();
        inst.r_edges = combined_edges;
        for (int i = 0; i < m; ++i) {
            const auto& s = trees[i]->s_sets[static_cast<std::size_t>(choice[i])];
            if (!s.empty()) inst.clusters.push_back(s);  // empty sets constrain nothing
        }
        DecisionResult r = cluster_feasible(inst, opts);
        out.decisive_instance = std::move(inst);
        ++out.choices_tested;
        if (r.status == Decision::colorable) {
            out.verdict = StageVerdict::colorable;
            out.witness = std::move(r.witness);
            return true;
        }
        return false;
    };

    if (out.exhaustive) {
        std::vector<int> choice(static_cast<std::size_t>(m), 0);
        while (true) {
            if (try_choice(choice)) return out;
            int pos = m - 1;
            while (pos >= 0 && choice[pos] == q - 1) { choice[pos] = 0; --pos; }
            if (pos < 0) break;
            ++choice[pos];
        }
        out.verdict = StageVerdict::non_two_colorable;
    } else {
        Rng rng(sample_seed);
        std::vector<int> choice(static_cast<std::size_t>(m), 0);
        for (long long it = 0; it < choice_cap; ++it) {
            for (int i = 0; i < m; ++i) choice[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
            if (try_choice(choice)) return out;
        }
        out.verdict = StageVerdict::inconclusive_sampled;
    }
    return out;
}

}  // namespace propb
