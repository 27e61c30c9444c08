#include <catch2/catch_amalgamated.hpp>

#include <propb/propb.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// One scratch directory per test run; wiped the first time it is requested.
const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "propb_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path work_file(const std::string& name) { return work_dir() / name; }

// Runs the binary with stdout+stderr captured into `capture`; returns the
// process exit code (or a negative sentinel when the shell itself failed).
int run_cli(const std::string& args, const fs::path& capture) {
    const std::string cmd =
        std::string("\"") + PROPB_CLI_PATH + "\" " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_file(const fs::path& p) { return json::parse(slurp(p)); }

propb::Hypergraph fano_plane() {
    return propb::Hypergraph(7, {{0, 1, 2},
                                 {0, 3, 4},
                                 {0, 5, 6},
                                 {1, 3, 5},
                                 {1, 4, 6},
                                 {2, 3, 6},
                                 {2, 4, 5}});
}

}  // namespace

TEST_CASE("cli prints help and rejects unknown subcommands") {
    const fs::path cap = work_file("help.txt");
    REQUIRE(run_cli("--help", cap) == 0);
    const std::string text = slurp(cap);
    REQUIRE(text.find("generate") != std::string::npos);
    REQUIRE(text.find("decide") != std::string::npos);
    REQUIRE(text.find("sweep") != std::string::npos);

    REQUIRE(run_cli("frobnicate", work_file("unknown.txt")) != 0);
}

TEST_CASE("cli generate xyz writes the construction it reports") {
    const fs::path out = work_file("xyz.txt");
    const fs::path cap = work_file("xyz_report.txt");
    REQUIRE(run_cli("generate xyz --n 100 --k 3 --epsilon 0.8 --out " + out.string(), cap) == 0);

    const json rep = parse_file(cap);
    REQUIRE(rep.at("n") == 100);
    REQUIRE(rep.at("k") == 3);
    REQUIRE(rep.at("x_size") == 16);   // ceil(100^0.6) = 16
    REQUIRE(rep.at("z_size") == 68);   // 100 - 2*16
    REQUIRE(rep.at("edges") == 17408); // 16 * 16 * 68

    const propb::Hypergraph loaded = propb::load_hypergraph(out.string());
    REQUIRE(loaded == propb::build_xyz(propb::XYZConstruction(100, 3, 0.8)));
}

TEST_CASE("cli generate components matches the library builder") {
    const fs::path out = work_file("comps.txt");
    const fs::path cap = work_file("comps_report.txt");
    REQUIRE(run_cli("generate components --layout 3x3,2x2 --n 12 --out " + out.string(), cap) == 0);
    const json rep = parse_file(cap);
    REQUIRE(rep.at("n") == 12);
    REQUIRE(rep.at("components") == 2);
    REQUIRE(rep.at("edges") == 13); // 3*3 + 2*2

    propb::ComponentLayout layout;
    layout.sides = {{3, 3}, {2, 2}};
    REQUIRE(propb::load_hypergraph(out.string()) == propb::build_components(layout, 12));

    // Without --n the vertex count is exactly the sum of the side sizes.
    const fs::path out2 = work_file("comps_default_n.txt");
    REQUIRE(run_cli("generate components --layout 2x2 --out " + out2.string(),
                    work_file("comps_default_report.txt")) == 0);
    REQUIRE(propb::load_hypergraph(out2.string()).vertex_count() == 4);

    // A malformed layout item is a runtime error, not a crash.
    REQUIRE(run_cli("generate components --layout 3y3 --out " + work_file("bad.txt").string(),
                    work_file("bad_layout.txt")) == 3);
}

TEST_CASE("cli decide maps the three statuses onto exit codes") {
    const fs::path fano = work_file("fano.txt");
    propb::save_hypergraph(fano.string(), fano_plane());

    const fs::path rep_path = work_file("fano_report.json");
    REQUIRE(run_cli("decide --in " + fano.string() + " --brute-force --report " + rep_path.string(),
                    work_file("fano_out.txt")) == 1);
    json rep = parse_file(rep_path);
    REQUIRE(rep.at("status") == "not_colorable");
    REQUIRE(rep.at("n") == 7);
    REQUIRE(rep.at("edges") == 7);
    REQUIRE_FALSE(rep.contains("witness"));

    // The search-based decider agrees with brute force on the same file.
    REQUIRE(run_cli("decide --in " + fano.string(), work_file("fano_search.txt")) == 1);

    propb::ComponentLayout layout;
    layout.sides = {{3, 3}, {2, 2}};
    const fs::path blocks = work_file("blocks.txt");
    propb::save_hypergraph(blocks.string(), propb::build_components(layout, 10));
    const fs::path blocks_rep = work_file("blocks_report.json");
    REQUIRE(run_cli("decide --in " + blocks.string() + " --report " + blocks_rep.string(),
                    work_file("blocks_out.txt")) == 0);
    rep = parse_file(blocks_rep);
    REQUIRE(rep.at("status") == "colorable");
    REQUIRE(rep.at("witness").size() == 10);
    REQUIRE(rep.at("witness_proper") == true);
    REQUIRE(run_cli("decide --in " + blocks.string() + " --brute-force",
                    work_file("blocks_brute.txt")) == 0);

    // A missing input file is a runtime error.
    REQUIRE(run_cli("decide --in " + work_file("missing.txt").string(),
                    work_file("missing_out.txt")) == 3);
}

TEST_CASE("cli perturb layers sampled sets on top of the base") {
    propb::ComponentLayout layout;
    layout.sides = {{3, 3}};
    const propb::Hypergraph base = propb::build_components(layout, 12);
    const fs::path base_path = work_file("perturb_base.txt");
    propb::save_hypergraph(base_path.string(), base);

    const fs::path out = work_file("perturbed.txt");
    const fs::path cap = work_file("perturb_report.txt");
    REQUIRE(run_cli("perturb --in " + base_path.string() + " --ell 2 --count 30 --seed 5 --out " +
                        out.string(),
                    cap) == 0);
    const json rep = parse_file(cap);
    REQUIRE(rep.at("base_edges") == 9);
    const long long distinct = rep.at("distinct_sets").get<long long>();
    REQUIRE(distinct >= 1);
    REQUIRE(distinct <= 30);
    const propb::Hypergraph perturbed = propb::load_hypergraph(out.string());
    REQUIRE(perturbed.edge_count() == rep.at("edges_out").get<long long>());
    REQUIRE(perturbed.edge_count() >= base.edge_count());
    REQUIRE(perturbed.edge_count() <= base.edge_count() + 30);
    for (long long e = 0; e < base.edge_count(); ++e) {
        const auto edge = base.edge(e);
        REQUIRE(perturbed.has_edge(std::vector<int>(edge.begin(), edge.end())));
    }

    // Same seed, same bytes.
    const fs::path out2 = work_file("perturbed_again.txt");
    REQUIRE(run_cli("perturb --in " + base_path.string() + " --ell 2 --count 30 --seed 5 --out " +
                        out2.string(),
                    work_file("perturb_report2.txt")) == 0);
    REQUIRE(slurp(out) == slurp(out2));

    // Bernoulli mode keeps the base as a subset too.
    const fs::path out3 = work_file("perturbed_prob.txt");
    REQUIRE(run_cli("perturb --in " + base_path.string() + " --ell 2 --prob 0.02 --seed 7 --out " +
                        out3.string(),
                    work_file("perturb_report3.txt")) == 0);
    REQUIRE(propb::load_hypergraph(out3.string()).edge_count() >= base.edge_count());

    // --count and --prob are mutually exclusive, and one of them is required.
    REQUIRE(run_cli("perturb --in " + base_path.string() +
                        " --ell 2 --count 3 --prob 0.5 --seed 1 --out " + out.string(),
                    work_file("perturb_both.txt")) != 0);
    REQUIRE(run_cli("perturb --in " + base_path.string() + " --ell 2 --seed 1 --out " +
                        out.string(),
                    work_file("perturb_neither.txt")) != 0);
}

TEST_CASE("cli extract-families reproduces the complete bipartite trace") {
    propb::ComponentLayout layout;
    layout.sides = {{4, 4}};
    const fs::path k44 = work_file("k44.txt");
    propb::save_hypergraph(k44.string(), propb::build_components(layout, 8));

    const fs::path rep_path = work_file("families.json");
    REQUIRE(run_cli("extract-families --in " + k44.string() +
                        " --delta 0.6666666666666666 --ell 2 --report " + rep_path.string(),
                    work_file("families_out.txt")) == 0);
    const json rep = parse_file(rep_path);
    REQUIRE(rep.at("precondition_failed") == false);
    REQUIRE(rep.at("stopped_early") == false);
    REQUIRE(rep.at("target") == 1);
    REQUIRE(rep.at("families").size() == 1);
    const json& fam = rep.at("families").at(0);
    REQUIRE(fam.at("members").size() == 1);
    REQUIRE(fam.at("members").at(0).at("vertex") == 0);
    REQUIRE(fam.at("members").at(0).at("degree") == 4);
    REQUIRE(fam.at("members").at(0).at("neighborhood_size") == 4);
    REQUIRE(fam.at("sum_sq").get<double>() == Catch::Approx(16.0));
    REQUIRE(fam.at("ended_by_bound") == true);
    REQUIRE(rep.at("all_degrees_above_half_power") == true);
    REQUIRE(rep.at("all_power_sums_above_bound") == true);

    // The extractor only accepts graphs (arity 2).
    const fs::path fano = work_file("families_fano.txt");
    propb::save_hypergraph(fano.string(), fano_plane());
    REQUIRE(run_cli("extract-families --in " + fano.string() + " --delta 0.5 --ell 2",
                    work_file("families_bad.txt")) == 3);
}

TEST_CASE("cli grow-witness and run-stages report on a dense random instance") {
    const fs::path dense = work_file("dense40.txt");
    propb::save_hypergraph(dense.string(), propb::random_uniform(40, 3, 4000, 2024));

    const fs::path grow_rep = work_file("grow.json");
    REQUIRE(run_cli("grow-witness --in " + dense.string() +
                        " --epsilon 0.2 --ell 2 --seed 9 --trials 10 --rho 1 --report " +
                        grow_rep.string(),
                    work_file("grow_out.txt")) == 0);
    const json grow = parse_file(grow_rep);
    REQUIRE(grow.at("edges") == 4000);
    REQUIRE(grow.at("regularize_failed") == false);
    REQUIRE(grow.contains("alpha"));
    REQUIRE(grow.at("core_edges").get<long long>() > 0);
    REQUIRE(grow.contains("success"));
    if (grow.at("success").get<bool>()) {
        REQUIRE(grow.at("tree").at("nodes").get<int>() >= 1);
        REQUIRE(grow.contains("verified"));
    } else {
        REQUIRE(grow.contains("failure"));
        REQUIRE(grow.contains("fail_level"));
    }

    const fs::path stages_rep = work_file("stages.json");
    REQUIRE(run_cli("run-stages --in " + dense.string() +
                        " --epsilon 0.2 --ell 2 --rho 1 --seed 9 --trials 10 --budget 100000 "
                        "--report " +
                        stages_rep.string(),
                    work_file("stages_out.txt")) == 0);
    const json stages = parse_file(stages_rep);
    REQUIRE(stages.at("stage_target").get<int>() >= 1);
    const std::string verdict = stages.at("verdict").get<std::string>();
    REQUIRE((verdict == "non_two_colorable" || verdict == "colorable" ||
             verdict == "inconclusive_no_success" || verdict == "inconclusive_sampled"));
    REQUIRE(stages.at("combined_edges").get<long long>() >=
            stages.at("core_edges").get<long long>());
    REQUIRE(stages.at("choice_space").get<double>() >= 1.0);
    REQUIRE(stages.at("stages").size() ==
            static_cast<std::size_t>(stages.at("stage_target").get<int>()));
}

TEST_CASE("cli sweep writes csv, json, and a plot script") {
    const fs::path cfg_path = work_file("sweep_config.json");
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"base": {"kind": "components", "n": 12},
                   "ell": 2, "epsilon": 0.5,
                   "rho_grid": [0.0, 0.5],
                   "trials": 3, "seed": 3, "budget": 100000, "jobs": 1})";
    }

    const fs::path csv_path = work_file("curve.csv");
    const fs::path plot_path = work_file("curve.gp");
    const fs::path cap = work_file("sweep_out.txt");
    REQUIRE(run_cli("sweep --config " + cfg_path.string() + " --out " + csv_path.string() +
                        " --plot " + plot_path.string(),
                    cap) == 0);

    const std::string csv = slurp(csv_path);
    REQUIRE(csv.rfind("n,k,ell,epsilon,rho", 0) == 0);

    const json rep = parse_file(cap);
    REQUIRE(rep.at("n") == 12);
    REQUIRE(rep.at("points").size() == 2);
    REQUIRE(rep.at("points").at(0).at("rho").get<double>() == 0.0);
    REQUIRE(rep.at("points").at(0).at("colorable") == 3);
    REQUIRE(rep.at("crossing").contains("status"));

    const std::string plot = slurp(plot_path);
    REQUIRE(plot.find("logscale") != std::string::npos);
    REQUIRE(plot.find(csv_path.filename().string()) != std::string::npos);

    // A job-count override must not change the sampled results.
    const fs::path csv2 = work_file("curve_jobs2.csv");
    REQUIRE(run_cli("sweep --config " + cfg_path.string() + " --out " + csv2.string() +
                        " --jobs 2",
                    work_file("sweep_out2.txt")) == 0);
    REQUIRE(slurp(csv2) == csv);

    REQUIRE(run_cli("sweep --config " + work_file("no_such_config.json").string() + " --out " +
                        csv_path.string(),
                    work_file("sweep_bad.txt")) == 3);
}
