#pragma once

// Small statistics kit for the experiment harness.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace propb {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion (default z: 95%).
inline WilsonInterval wilson_interval(long long successes, long long trials,
                                      double z = 1.959963984540054) {
    if (trials <= 0) return {0.0, 1.0};
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = p + z2 / (2.0 * nn);
    const double spread = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // At the extremes the exact bound is 0 or 1; pin them so rounding noise
    // cannot push the interval off the observed proportion.
    const double lo = successes == 0 ? 0.0 : std::max(0.0, (center - spread) / denom);
    const double hi = successes == trials ? 1.0 : std::min(1.0, (center + spread) / denom);
    return {lo, hi};
}

// Weighted least-squares-optimal nonincreasing fit (pool adjacent violators).
inline std::vector<double> pava_nonincreasing(const std::vector<double>& y,
                                              const std::vector<double>& w) {
    if (y.size() != w.size()) throw std::invalid_argument("pava: size mismatch");
    struct Block {
        double value, weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < y.size(); ++i) {
        blocks.push_back({y[i], std::max(w[i], 1e-12), 1});
        while (blocks.size() >= 2 && blocks[blocks.size() - 2].value < blocks.back().value) {
            Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.value = (a.value * a.weight + b.value * b.weight) / (a.weight + b.weight);
            a.weight += b.weight;
            a.count += b.count;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (const auto& b : blocks)
        out.insert(out.end(), b.count, b.value);
    return out;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares: need at least two paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("least_squares: degenerate x values");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residuals.push_back(y[i] - (fit.intercept + fit.slope * x[i]));
    return fit;
}

}  // namespace propb
