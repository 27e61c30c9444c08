#pragma once

// Survival-probability experiments.
//
// A point estimates P(base + R is 2-colorable) at |R| = round(rho *
// n^(l*eps/2)) over independent trials.  A sweep runs a rho grid, fits a
// nonincreasing curve (survival cannot rise with more random sets, so the
// isotonic fit only removes noise), and reads off the 0.5 crossing with a
// parametric bootstrap interval.  Trial seeds derive from (seed, point,
// trial) alone: results are identical whatever the thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "decider.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "stats.hpp"

namespace propb {

struct BaseSpec {
    enum class Kind { xyz, components, random_uniform, file };
    Kind kind = Kind::components;
    int n = 0;
    int k = 3;                 // xyz / random_uniform
    double epsilon = 0.0;      // xyz
    long long edges = 0;       // random_uniform
    std::uint64_t base_seed = 0;
    ComponentLayout layout;    // components; empty layout = edgeless base
    std::string path;          // file
};

inline Hypergraph build_base(const BaseSpec& b) {
    switch (b.kind) {
        case BaseSpec::Kind::xyz:
            return build_xyz(XYZConstruction(b.n, b.k, b.epsilon));
        case BaseSpec::Kind::components:
            return build_components(b.layout, b.n);
        case BaseSpec::Kind::random_uniform:
            return random_uniform(b.n, b.k, b.edges, b.base_seed);
        case BaseSpec::Kind::file:
            return load_hypergraph(b.path);
    }
    throw std::logic_error("build_base: unknown kind");
}

struct ExperimentConfig {
    BaseSpec base;
    int ell = 2;
    double epsilon = 0.0;          // |R| scale exponent: r_count = rho * n^(ell*eps/2)
    std::vector<double> rho_grid;  // positive, strictly increasing
    int trials = 100;
    std::uint64_t seed = 0;
    std::uint64_t node_budget = 50'000'000;
    int jobs = 0;                  // 0: PROPB_JOBS env var, then hardware
};

inline long long r_count_for(double rho, int n, int ell, double epsilon) {
    const double v = rho * std::pow(static_cast<double>(n), ell * epsilon / 2.0);
    if (v > 5e7) throw std::invalid_argument("r_count_for: random family too large");
    return std::llround(v);
}

inline int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PROPB_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct SurvivalPoint {
    double rho = 0.0;
    long long r_count = 0;
    int trials = 0;
    int colorable = 0;
    int not_colorable = 0;
    int undecided = 0;
    double survival = 0.0;  // colorable / (trials - undecided)
    double ci_lo = 0.0, ci_hi = 1.0;
    bool unreliable = false;  // more than 10% of trials hit the budget
};

struct Crossing {
    enum class Status { ok, all_above, all_below };
    Status status = Status::all_above;
    double rho_star = std::numeric_limits<double>::quiet_NaN();
    double ci_lo = std::numeric_limits<double>::quiet_NaN();
    double ci_hi = std::numeric_limits<double>::quiet_NaN();
    int bootstrap_used = 0;  // resamples whose crossing fell inside the grid
};

struct SurvivalCurve {
    int n = 0, k = 0, ell = 2;
    double epsilon = 0.0;
    std::vector<SurvivalPoint> points;
    std::vector<double> fitted;  // nonincreasing fit of survival
    Crossing crossing;
};

namespace detail {

enum class TrialOutcome : std::uint8_t { colorable, not_colorable, undecided };

// One perturb-and-decide trial; seeds depend only on (seed, point, trial).
inline TrialOutcome run_trial(const Hypergraph& base, const ExperimentConfig& cfg,
                              std::size_t point_idx, long long r_count, int trial) {
    const std::uint64_t point_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(point_idx));
    const std::uint64_t trial_seed = derive_seed(point_seed, static_cast<std::uint64_t>(trial));
    auto r = sample_perturbation(
        base.vertex_count(), PerturbationSpec::fixed_count(r_count, cfg.ell, trial_seed));
    DecisionResult res = is_two_colorable(perturb(base, r), DeciderOptions{cfg.node_budget});
    switch (res.status) {
        case Decision::colorable: {
            if (!is_proper(base.with_edges(r), *res.witness))
                throw std::logic_error("run_trial: witness failed its proper check");
            return TrialOutcome::colorable;
        }
        case Decision::not_colorable: return TrialOutcome::not_colorable;
        default: return TrialOutcome::undecided;
    }
}

inline SurvivalPoint finish_point(double rho, long long r_count, int trials,
                                  const std::vector<TrialOutcome>& outcomes) {
    SurvivalPoint p;
    p.rho = rho;
    p.r_count = r_count;
    p.trials = trials;
    for (auto o : outcomes) {
        if (o == TrialOutcome::colorable) ++p.colorable;
        else if (o == TrialOutcome::not_colorable) ++p.not_colorable;
        else ++p.undecided;
    }
    const int effective = p.trials - p.undecided;
    p.survival = effective > 0 ? static_cast<double>(p.colorable) / effective : 0.0;
    const WilsonInterval ci = wilson_interval(p.colorable, effective);
    p.ci_lo = ci.lo;
    p.ci_hi = ci.hi;
    p.unreliable = p.undecided * 10 > p.trials;
    return p;
}

}  // namespace detail

// Crossing of a nonincreasing curve with 0.5, linear interpolation on rho.
inline Crossing crossing_from_fit(const std::vector<double>& rho, const std::vector<double>& fit) {
    Crossing c;
    std::size_t idx = rho.size();
    for (std::size_t i = 0; i < fit.size(); ++i)
        if (fit[i] < 0.5) { idx = i; break; }
    if (idx == rho.size()) {
        c.status = Crossing::Status::all_above;
        return c;
    }
    if (idx == 0) {
        c.status = Crossing::Status::all_below;
        return c;
    }
    const double f0 = fit[idx - 1], f1 = fit[idx];
    c.status = Crossing::Status::ok;
    c.rho_star = rho[idx - 1] + (0.5 - f0) * (rho[idx] - rho[idx - 1]) / (f1 - f0);
    return c;
}

inline SurvivalCurve threshold_sweep(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("threshold_sweep: trials must be >= 1");
    if (cfg.rho_grid.empty()) throw std::invalid_argument("threshold_sweep: empty rho grid");
    for (std::size_t i = 0; i < cfg.rho_grid.size(); ++i) {
        if (cfg.rho_grid[i] < 0.0)
            throw std::invalid_argument("threshold_sweep: rho values must be nonnegative");
        if (i > 0 && cfg.rho_grid[i] <= cfg.rho_grid[i - 1])
            throw std::invalid_argument("threshold_sweep: rho grid must be strictly increasing");
    }

    const Hypergraph base = build_base(cfg.base);
    const int n = base.vertex_count();
    const std::size_t npoints = cfg.rho_grid.size();
    std::vector<long long> r_counts(npoints);
    for (std::size_t i = 0; i < npoints; ++i)
        r_counts[i] = r_count_for(cfg.rho_grid[i], n, cfg.ell, cfg.epsilon);

    // Flat task pool over (point, trial); slot writes keep results
    // independent of scheduling.
    const std::size_t total = npoints * static_cast<std::size_t>(cfg.trials);
    std::vector<detail::TrialOutcome> outcomes(total);
    std::atomic<std::size_t> cursor{0};
    const int jobs = std::max(1, std::min<int>(resolve_jobs(cfg.jobs), static_cast<int>(total)));
    auto worker = [&]() {
        while (true) {
            const std::size_t at = cursor.fetch_add(1);
            if (at >= total) return;
            const std::size_t point = at / static_cast<std::size_t>(cfg.trials);
            const int trial = static_cast<int>(at % static_cast<std::size_t>(cfg.trials));
            outcomes[at] = detail::run_trial(base, cfg, point, r_counts[point], trial);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SurvivalCurve curve;
    curve.n = n;
    curve.k = std::max(base.max_arity(), cfg.ell);
    curve.ell = cfg.ell;
    curve.epsilon = cfg.epsilon;
    std::vector<double> y, w;
    for (std::size_t i = 0; i < npoints; ++i) {
        std::vector<detail::TrialOutcome> slice(
            outcomes.begin() + static_cast<std::ptrdiff_t>(i * cfg.trials),
            outcomes.begin() + static_cast<std::ptrdiff_t>((i + 1) * cfg.trials));
        curve.points.push_back(detail::finish_point(cfg.rho_grid[i], r_counts[i], cfg.trials, slice));
        y.push_back(curve.points.back().survival);
        w.push_back(static_cast<double>(cfg.trials - curve.points.back().undecided));
    }
    curve.fitted = pava_nonincreasing(y, w);
    curve.crossing = crossing_from_fit(cfg.rho_grid, curve.fitted);

    // Parametric bootstrap for the crossing interval.
    if (curve.crossing.status == Crossing::Status::ok) {
        const int resamples = 1000;
        Rng rng(derive_seed(cfg.seed, 0xb005ull));
        std::vector<double> stars;
        std::vector<double> yb(npoints), wb(npoints);
        for (int b = 0; b < resamples; ++b) {
            for (std::size_t i = 0; i < npoints; ++i) {
                const auto& pt = curve.points[i];
                const int eff = pt.trials - pt.undecided;
                int hits = 0;
                for (int s = 0; s < eff; ++s)
                    if (rng.unit() < pt.survival) ++hits;
                yb[i] = eff > 0 ? static_cast<double>(hits) / eff : 0.0;
                wb[i] = static_cast<double>(eff);
            }
            Crossing cb = crossing_from_fit(cfg.rho_grid, pava_nonincreasing(yb, wb));
            if (cb.status == Crossing::Status::ok) stars.push_back(cb.rho_star);
        }
        curve.crossing.bootstrap_used = static_cast<int>(stars.size());
        if (!stars.empty()) {
            std::sort(stars.begin(), stars.end());
            const auto at = [&](double q) {
                const double pos = q * static_cast<double>(stars.size() - 1);
                return stars[static_cast<std::size_t>(std::llround(pos))];
            };
            curve.crossing.ci_lo = at(0.025);
            curve.crossing.ci_hi = at(0.975);
        }
    }
    return curve;
}

inline SurvivalPoint survival_probability(const ExperimentConfig& cfg, double rho) {
    ExperimentConfig one = cfg;
    one.rho_grid = {rho};
    return threshold_sweep(one).points.front();
}

struct ScalingRow {
    int n = 0;
    Crossing crossing;
    double r_star = std::numeric_limits<double>::quiet_NaN();  // crossing in |R| units
    bool usable = false;
};

struct ScalingFit {
    std::vector<ScalingRow> rows;
    bool ok = false;  // at least two usable rows
    double slope = 0.0, intercept = 0.0;
    std::vector<double> residuals;
};

// Crossing location against n on a log-log scale; rows whose crossing left
// the grid are recorded but left out of the fit.
inline ScalingFit scaling_check(const std::function<ExperimentConfig(int)>& make_cfg,
                                const std::vector<int>& n_list) {
    if (n_list.size() < 3) throw std::invalid_argument("scaling_check: need at least three sizes");
    ScalingFit fit;
    std::vector<double> xs, ys;
    for (int n : n_list) {
        const ExperimentConfig cfg = make_cfg(n);
        const SurvivalCurve curve = threshold_sweep(cfg);
        ScalingRow row;
        row.n = n;
        row.crossing = curve.crossing;
        row.usable = curve.crossing.status == Crossing::Status::ok;
        if (row.usable) {
            row.r_star = curve.crossing.rho_star *
                         std::pow(static_cast<double>(curve.n), cfg.ell * cfg.epsilon / 2.0);
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(row.r_star));
        }
        fit.rows.push_back(row);
    }
    if (xs.size() >= 2) {
        const LinearFit lf = least_squares(xs, ys);
        fit.ok = true;
        fit.slope = lf.slope;
        fit.intercept = lf.intercept;
        fit.residuals = lf.residuals;
    }
    return fit;
}

inline void write_curve_csv(std::ostream& out, const SurvivalCurve& curve) {
    out << "n,k,ell,epsilon,rho,r_count,trials,colorable,undecided,survival,ci_lo,ci_hi\n";
    char line[256];
    for (const auto& p : curve.points) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%.6g,%.6g,%lld,%d,%d,%d,%.6f,%.6f,%.6f\n",
                      curve.n, curve.k, curve.ell, curve.epsilon, p.rho, p.r_count, p.trials,
                      p.colorable, p.undecided, p.survival, p.ci_lo, p.ci_hi);
        out << line;
    }
}

// Companion plot script: survival with its interval, against rho on a log axis.
inline std::string gnuplot_script(const std::string& csv_path, const std::string& png_path) {
    std::string s;
    s += "set datafile separator ','\n";
    s += "set terminal pngcairo size 900,600\n";
    s += "set output '" + png_path + "'\n";
    s += "set logscale x\n";
    s += "set xlabel 'rho'\n";
    s += "set ylabel 'survival probability'\n";
    s += "set yrange [-0.05:1.05]\n";
    s += "plot '" + csv_path +
         "' every ::1 using 5:10:11:12 with yerrorbars title 'survival', 0.5 with lines title ''\n";
    return s;
}

}  // namespace propb
