// Command-line front end.
//
// Subcommands cover the pipeline end to end: generate structured bases,
// perturb them with random l-sets, decide 2-colorability, run the
// family/witness-tree/stage procedures with JSON reports, and sweep survival
// curves to CSV.  Exit codes for `decide`: 0 colorable, 1 not, 2 undecided;
// anything else uses 3 for runtime errors and CLI11's own codes for usage
// errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <propb/propb.hpp>

using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_report(const json& j, const std::string& path) {
    const std::string body = j.dump(2) + "\n";
    if (!path.empty()) write_text(path, body);
    std::cout << body;
}

propb::ComponentLayout parse_layout(const std::string& text) {
    propb::ComponentLayout layout;
    if (text.empty()) return layout;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto xpos = item.find('x');
        if (xpos == std::string::npos)
            throw std::runtime_error("layout item '" + item + "' is not of the form AxB");
        layout.sides.emplace_back(std::stoi(item.substr(0, xpos)), std::stoi(item.substr(xpos + 1)));
    }
    return layout;
}

const char* decision_name(propb::Decision d) {
    switch (d) {
        case propb::Decision::colorable: return "colorable";
        case propb::Decision::not_colorable: return "not_colorable";
        default: return "undecided";
    }
}

json witness_json(const propb::Coloring& w) {
    json arr = json::array();
    for (auto c : w) arr.push_back(static_cast<int>(c));
    return arr;
}

propb::BaseSpec base_from_json(const json& j) {
    propb::BaseSpec base;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "xyz") {
        base.kind = propb::BaseSpec::Kind::xyz;
        base.n = j.at("n").get<int>();
        base.k = j.at("k").get<int>();
        base.epsilon = j.at("epsilon").get<double>();
    } else if (kind == "components") {
        base.kind = propb::BaseSpec::Kind::components;
        base.n = j.at("n").get<int>();
        if (j.contains("layout"))
            for (const auto& side : j.at("layout"))
                base.layout.sides.emplace_back(side.at(0).get<int>(), side.at(1).get<int>());
    } else if (kind == "random_uniform") {
        base.kind = propb::BaseSpec::Kind::random_uniform;
        base.n = j.at("n").get<int>();
        base.k = j.at("k").get<int>();
        base.edges = j.at("edges").get<long long>();
        base.base_seed = j.value("seed", 0ull);
    } else if (kind == "file") {
        base.kind = propb::BaseSpec::Kind::file;
        base.path = j.at("path").get<std::string>();
    } else {
        throw std::runtime_error("unknown base kind '" + kind + "'");
    }
    return base;
}

std::vector<double> grid_from_json(const json& j) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(v.get<double>());
        return grid;
    }
    const double from = j.at("from").get<double>();
    const double to = j.at("to").get<double>();
    const int points = j.at("points").get<int>();
    const bool logspace = j.value("log", true);
    if (points < 2) throw std::runtime_error("rho grid needs at least two points");
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(i) / (points - 1);
        grid.push_back(logspace ? from * std::pow(to / from, u) : from + (to - from) * u);
    }
    return grid;
}

json curve_json(const propb::SurvivalCurve& curve) {
    json points = json::array();
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        points.push_back({{"rho", p.rho},
                          {"r_count", p.r_count},
                          {"trials", p.trials},
                          {"colorable", p.colorable},
                          {"not_colorable", p.not_colorable},
                          {"undecided", p.undecided},
                          {"survival", p.survival},
                          {"ci_lo", p.ci_lo},
                          {"ci_hi", p.ci_hi},
                          {"fitted", curve.fitted[i]},
                          {"unreliable", p.unreliable}});
    }
    json cross;
    switch (curve.crossing.status) {
        case propb::Crossing::Status::ok:
            cross = {{"status", "ok"},
                     {"rho_star", curve.crossing.rho_star},
                     {"ci_lo", curve.crossing.ci_lo},
                     {"ci_hi", curve.crossing.ci_hi},
                     {"bootstrap_used", curve.crossing.bootstrap_used}};
            break;
        case propb::Crossing::Status::all_above:
            cross = {{"status", "all_above"}};
            break;
        case propb::Crossing::Status::all_below:
            cross = {{"status", "all_below"}};
            break;
    }
    return {{"n", curve.n},     {"k", curve.k},           {"ell", curve.ell},
            {"epsilon", curve.epsilon}, {"points", points}, {"crossing", cross}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-colorability workbench for perturbed hypergraphs"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------
    auto* generate = app.add_subcommand("generate", "build a structured base hypergraph");
    generate->require_subcommand(1);

    auto* gen_xyz = generate->add_subcommand("xyz", "three-part construction");
    int gx_n = 0, gx_k = 3;
    double gx_eps = 0.5;
    std::string gx_out;
    gen_xyz->add_option("--n", gx_n, "vertex count")->required();
    gen_xyz->add_option("--k", gx_k, "edge arity")->required();
    gen_xyz->add_option("--epsilon", gx_eps, "density exponent offset")->required();
    gen_xyz->add_option("--out", gx_out, "output path")->required();
    gen_xyz->callback([&]() {
        propb::XYZConstruction c(gx_n, gx_k, gx_eps);
        propb::save_hypergraph(gx_out, propb::build_xyz(c));
        emit_report({{"n", c.n},
                     {"k", c.k},
                     {"epsilon", c.epsilon},
                     {"x_size", c.x.size()},
                     {"z_size", c.z.size()},
                     {"edges", c.edge_count()},
                     {"out", gx_out}},
                    "");
    });

    auto* gen_comp = generate->add_subcommand("components", "disjoint complete bipartite graphs");
    std::string gc_layout, gc_out;
    int gc_n = -1;
    gen_comp->add_option("--layout", gc_layout, "comma list of AxB side sizes")->required();
    gen_comp->add_option("--n", gc_n, "vertex count (default: exactly the parts)");
    gen_comp->add_option("--out", gc_out, "output path")->required();
    gen_comp->callback([&]() {
        propb::ComponentLayout layout = parse_layout(gc_layout);
        int n = gc_n;
        if (n < 0) {
            n = 0;
            for (auto [a, b] : layout.sides) n += a + b;
        }
        propb::Hypergraph h = propb::build_components(layout, n);
        propb::save_hypergraph(gc_out, h);
        emit_report({{"n", n}, {"components", layout.sides.size()}, {"edges", h.edge_count()}, {"out", gc_out}}, "");
    });

    // ---- perturb ------------------------------------------------------
    auto* perturb_cmd = app.add_subcommand("perturb", "add random l-sets to a hypergraph");
    std::string p_in, p_out;
    int p_ell = 2;
    std::optional<long long> p_count;
    std::optional<double> p_prob;
    std::uint64_t p_seed = 0;
    perturb_cmd->add_option("--in", p_in, "input hypergraph")->required();
    perturb_cmd->add_option("--ell", p_ell, "size of each random set")->required();
    auto* opt_count = perturb_cmd->add_option("--count", p_count, "number of draws (with replacement)");
    auto* opt_prob = perturb_cmd->add_option("--prob", p_prob, "independent inclusion probability");
    opt_count->excludes(opt_prob);
    perturb_cmd->add_option("--seed", p_seed, "random seed")->required();
    perturb_cmd->add_option("--out", p_out, "output path")->required();
    perturb_cmd->callback([&]() {
        if (!p_count && !p_prob) throw CLI::RequiredError("--count or --prob");
        propb::Hypergraph h = propb::load_hypergraph(p_in);
        const propb::PerturbationSpec spec =
            p_count ? propb::PerturbationSpec::fixed_count(*p_count, p_ell, p_seed)
                    : propb::PerturbationSpec::bernoulli(*p_prob, p_ell, p_seed);
        const auto r = propb::sample_perturbation(h.vertex_count(), spec);
        propb::Hypergraph out = propb::perturb(h, r);
        propb::save_hypergraph(p_out, out);
        emit_report({{"n", h.vertex_count()},
                     {"base_edges", h.edge_count()},
                     {"distinct_sets", r.size()},
                     {"edges_out", out.edge_count()},
                     {"out", p_out}},
                    "");
    });

    // ---- decide -------------------------------------------------------
    auto* decide = app.add_subcommand("decide", "exact 2-colorability decision");
    std::string d_in, d_report;
    bool d_brute = false;
    std::uint64_t d_budget = 50'000'000;
    decide->add_option("--in", d_in, "input hypergraph")->required();
    decide->add_flag("--brute-force", d_brute, "enumerate all colorings (n <= 24)");
    decide->add_option("--budget", d_budget, "node budget before reporting undecided");
    decide->add_option("--report", d_report, "also write the JSON report here");
    int decide_exit = 0;
    decide->callback([&]() {
        propb::Hypergraph h = propb::load_hypergraph(d_in);
        propb::DecisionResult res = d_brute
                                        ? propb::brute_force_two_colorable(h)
                                        : propb::is_two_colorable(h, propb::DeciderOptions{d_budget});
        json rep = {{"status", decision_name(res.status)},
                    {"n", h.vertex_count()},
                    {"edges", h.edge_count()},
                    {"nodes", res.nodes},
                    {"seconds", res.seconds}};
        if (res.witness) {
            rep["witness"] = witness_json(*res.witness);
            rep["witness_proper"] = propb::is_proper(h, *res.witness);
        }
        emit_report(rep, d_report);
        decide_exit = res.status == propb::Decision::colorable
                          ? 0
                          : res.status == propb::Decision::not_colorable ? 1 : 2;
    });

    // ---- extract-families ----------------------------------------------
    auto* fam = app.add_subcommand("extract-families", "greedy high-degree family extraction");
    std::string f_in, f_report;
    double f_delta = 0.5;
    int f_ell = 2;
    fam->add_option("--in", f_in, "input graph (arity 2)")->required();
    fam->add_option("--delta", f_delta, "density exponent")->required();
    fam->add_option("--ell", f_ell, "power used in the family sums")->required();
    fam->add_option("--report", f_report, "also write the JSON report here");
    fam->callback([&]() {
        propb::Hypergraph g = propb::load_hypergraph(f_in);
        const propb::FamilyExtraction fe = propb::extract_families(g, f_delta, f_ell);
        const double n = g.vertex_count();
        const double min_deg = 0.5 * std::pow(n, 1.0 - f_delta);
        const double pow_bound = std::pow(n, f_ell - (f_ell - 1) * f_delta) / std::pow(2.0, f_ell);
        json families = json::array();
        bool degrees_ok = true, sums_ok = true;
        for (std::size_t i = 0; i < fe.families.size(); ++i) {
            json members = json::array();
            for (const auto& m : fe.families[i]) {
                members.push_back({{"vertex", m.vertex},
                                   {"degree", m.degree},
                                   {"neighborhood_size", m.neighborhood.size()}});
                if (static_cast<double>(m.degree) < min_deg) degrees_ok = false;
            }
            if (fe.sum_pow_ell[i] < pow_bound) sums_ok = false;
            families.push_back({{"members", members},
                                {"sum_sq", fe.sum_sq[i]},
                                {"sum_pow_ell", fe.sum_pow_ell[i]},
                                {"ended_by_bound", static_cast<bool>(fe.ended_by_bound[i])}});
        }
        emit_report({{"n", g.vertex_count()},
                     {"edges", g.edge_count()},
                     {"delta", f_delta},
                     {"ell", f_ell},
                     {"precondition_failed", fe.precondition_failed},
                     {"stopped_early", fe.stopped_early},
                     {"target", fe.target},
                     {"families", families},
                     {"all_degrees_above_half_power", degrees_ok},
                     {"all_power_sums_above_bound", sums_ok}},
                    f_report);
    });

    // ---- grow-witness ---------------------------------------------------
    auto* grow = app.add_subcommand("grow-witness", "partite pipeline plus one witness tree");
    std::string w_in, w_report;
    double w_eps = 0.5, w_rho = 1.0;
    int w_ell = 2, w_trials = 20;
    std::uint64_t w_seed = 0;
    grow->add_option("--in", w_in, "input uniform hypergraph")->required();
    grow->add_option("--epsilon", w_eps, "density exponent offset")->required();
    grow->add_option("--ell", w_ell, "random set size")->required();
    grow->add_option("--seed", w_seed, "random seed")->required();
    grow->add_option("--trials", w_trials, "random partition attempts");
    grow->add_option("--rho", w_rho, "batch size multiplier on n^(l*eps/2)");
    grow->add_option("--report", w_report, "also write the JSON report here");
    grow->callback([&]() {
        propb::Hypergraph h = propb::load_hypergraph(w_in);
        propb::PipelineReport pipe =
            propb::partite_pipeline(h, w_ell, w_eps, w_trials, propb::derive_seed(w_seed, 1));
        json rep = {{"n", h.vertex_count()},
                    {"edges", h.edge_count()},
                    {"constants",
                     {{"c1", pipe.constants.c1},
                      {"c2", pipe.constants.c2},
                      {"c3", pipe.constants.c3},
                      {"c4", pipe.constants.c4},
                      {"c5", pipe.constants.c5}}},
                    {"after_km1", pipe.after_km1},
                    {"after_km2", pipe.after_km2},
                    {"km_branch_ok", pipe.km_branch_ok},
                    {"partite_edges", pipe.partition.h.edge_count()},
                    {"retained_fraction", pipe.partition.retained_fraction},
                    {"partite_ok", pipe.partite_ok},
                    {"regularize_failed", pipe.regularized.failed}};
        if (pipe.regularized.failed) {
            rep["note"] = pipe.regularized.note;
            emit_report(rep, w_report);
            return;
        }
        const propb::PartiteHypergraph& ph = pipe.regularized.ph;
        rep["alpha"] = ph.alpha;
        rep["chosen_log2"] = pipe.regularized.chosen_log2;
        rep["core_edges"] = ph.h.edge_count();

        const int n = ph.h.vertex_count();
        const auto th = propb::compute_activity_thresholds(ph.constants, n, ph.alpha);
        const long long per_level =
            std::max<long long>(1, propb::r_count_for(w_rho, n, w_ell, w_eps));
        propb::BatchList batches(static_cast<std::size_t>(std::max(ph.k - 2, 0)));
        for (std::size_t j = 0; j < batches.size(); ++j)
            batches[j] = propb::sample_perturbation(
                n, propb::PerturbationSpec::fixed_count(per_level, w_ell,
                                                        propb::derive_seed(w_seed, 100 + j)));
        propb::GrowResult g = propb::grow_witness_tree(ph, batches, th);
        rep["success"] = g.success;
        if (!g.success) {
            rep["failure"] = g.failure == propb::GrowFailure::no_root ? "no_root" : "batch_exhausted";
            rep["fail_level"] = g.fail_level;
        } else {
            const propb::VerifyResult v = propb::verify_witness(g.tree, ph, batches);
            json sizes = json::array();
            for (const auto& s : g.tree.s_sets) sizes.push_back(s.size());
            rep["tree"] = {{"nodes", g.tree.nodes.size()},
                           {"leaves", g.tree.leaves.size()},
                           {"s_sizes", sizes},
                           {"claim_violations", g.tree.claim_violations.size()},
                           {"s_window_ok", g.tree.s_window_ok}};
            rep["verified"] = v.ok;
            if (!v.ok) rep["verify_reason"] = v.reason;
        }
        emit_report(rep, w_report);
    });

    // ---- run-stages -----------------------------------------------------
    auto* stages = app.add_subcommand("run-stages", "sequential witness-tree stages");
    std::string s_in, s_report;
    double s_eps = 0.5, s_rho = 1.0;
    int s_ell = 2, s_trials = 20;
    std::uint64_t s_seed = 0, s_budget = 50'000'000;
    stages->add_option("--in", s_in, "input uniform hypergraph")->required();
    stages->add_option("--epsilon", s_eps, "density exponent offset")->required();
    stages->add_option("--ell", s_ell, "random set size")->required();
    stages->add_option("--rho", s_rho, "total random sets as multiple of n^(l*eps/2)")->required();
    stages->add_option("--seed", s_seed, "random seed")->required();
    stages->add_option("--trials", s_trials, "random partition attempts");
    stages->add_option("--budget", s_budget, "decision node budget");
    stages->add_option("--report", s_report, "also write the JSON report here");
    stages->callback([&]() {
        propb::Hypergraph h = propb::load_hypergraph(s_in);
        propb::PipelineReport pipe =
            propb::partite_pipeline(h, s_ell, s_eps, s_trials, propb::derive_seed(s_seed, 1));
        json rep = {{"n", h.vertex_count()}, {"edges", h.edge_count()}};
        if (pipe.regularized.failed) {
            rep["regularize_failed"] = true;
            rep["note"] = pipe.regularized.note;
            emit_report(rep, s_report);
            return;
        }
        const propb::PartiteHypergraph& ph = pipe.regularized.ph;
        const int n = ph.h.vertex_count();
        const auto th = propb::compute_activity_thresholds(ph.constants, n, ph.alpha);
        const int t = propb::stage_count(ph.constants, n, ph.alpha);
        const long long total = propb::r_count_for(s_rho, n, s_ell, s_eps);
        const propb::StageBatches batches =
            propb::make_stage_batches(n, ph.k, s_ell, t, total, propb::derive_seed(s_seed, 2));
        const propb::StageOutcome outcome =
            propb::run_stages(ph, batches, th, propb::DeciderOptions{s_budget}, 1LL << 20,
                              propb::derive_seed(s_seed, 3));
        json stage_rows = json::array();
        for (const auto& recd : outcome.stages) {
            json row = {{"success", recd.success},
                        {"edges_before", recd.edges_before},
                        {"edges_removed", recd.edges_removed},
                        {"claim_violations", recd.claim_violations}};
            if (recd.success) {
                row["verified"] = recd.verified;
                if (!recd.verified) row["verify_reason"] = recd.verify_reason;
            } else {
                row["failure"] =
                    recd.failure == propb::GrowFailure::no_root ? "no_root" : "batch_exhausted";
                row["fail_level"] = recd.fail_level;
            }
            stage_rows.push_back(row);
        }
        const char* verdict =
            outcome.verdict == propb::StageVerdict::non_two_colorable      ? "non_two_colorable"
            : outcome.verdict == propb::StageVerdict::colorable            ? "colorable"
            : outcome.verdict == propb::StageVerdict::inconclusive_sampled ? "inconclusive_sampled"
                                                                           : "inconclusive_no_success";
        rep["alpha"] = ph.alpha;
        rep["core_edges"] = ph.h.edge_count();
        rep["stage_target"] = t;
        rep["stages"] = stage_rows;
        rep["successes"] = outcome.successes;
        rep["verdict"] = verdict;
        rep["combined_edges"] = outcome.combined.edge_count();
        rep["choice_space"] = outcome.choice_space;
        rep["choices_tested"] = outcome.choices_tested;
        rep["exhaustive"] = outcome.exhaustive;
        if (outcome.witness)
            rep["witness_proper"] = propb::is_proper(outcome.combined, *outcome.witness);
        emit_report(rep, s_report);
    });

    // ---- sweep ----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "survival curve over a rho grid");
    std::string sw_config, sw_out, sw_plot;
    std::optional<std::uint64_t> sw_seed;
    std::optional<int> sw_jobs;
    sweep->add_option("--config", sw_config, "JSON experiment config")->required();
    sweep->add_option("--out", sw_out, "CSV output path")->required();
    sweep->add_option("--seed", sw_seed, "override the config seed");
    sweep->add_option("--jobs", sw_jobs, "override worker count (PROPB_JOBS otherwise)");
    sweep->add_option("--plot", sw_plot, "write a gnuplot script here");
    sweep->callback([&]() {
        std::ifstream in(sw_config);
        if (!in) throw std::runtime_error("cannot open " + sw_config);
        json cfg_json = json::parse(in);
        propb::ExperimentConfig cfg;
        cfg.base = base_from_json(cfg_json.at("base"));
        cfg.ell = cfg_json.at("ell").get<int>();
        cfg.epsilon = cfg_json.at("epsilon").get<double>();
        cfg.rho_grid = grid_from_json(cfg_json.at("rho_grid"));
        cfg.trials = cfg_json.value("trials", 100);
        cfg.seed = cfg_json.value("seed", 0ull);
        cfg.node_budget = cfg_json.value("budget", 50'000'000ull);
        cfg.jobs = cfg_json.value("jobs", 0);
        if (sw_seed) cfg.seed = *sw_seed;
        if (sw_jobs) cfg.jobs = *sw_jobs;

        const propb::SurvivalCurve curve = propb::threshold_sweep(cfg);
        std::ofstream csv(sw_out);
        if (!csv) throw std::runtime_error("cannot open " + sw_out + " for writing");
        propb::write_curve_csv(csv, curve);
        if (!sw_plot.empty())
            write_text(sw_plot, propb::gnuplot_script(sw_out, sw_out + ".png"));
        emit_report(curve_json(curve), "");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return decide_exit;
}
