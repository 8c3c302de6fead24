#include "epsent/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epsent {

namespace {

constexpr double kFirstOrderCoeff = 1.5957691216057307; // 4/sqrt(2*pi)
constexpr double kDeltaResidualTol = 1e-12;
constexpr int kBisectionCap = 200;

void check_variances(double input_var, double output_var) {
    if (!(input_var > 0.0) || !(output_var > 0.0)) {
        throw nonpositive_variance("variances must be strictly positive, got " +
                                   std::to_string(input_var) + " and " +
                                   std::to_string(output_var));
    }
}

// tv_exact depends only on the variance ratio; evaluate at t = ln(C / input_var).
double tv_at_log_ratio(double t) {
    return tv_exact(1.0, std::exp(t));
}

} // namespace

double rv_distortion(const GaussianMeasure& mu, const GaussianChannel& ch) {
    if (mu.dim() != ch.dim()) {
        throw dimension_mismatch("measure dimension " + std::to_string(mu.dim()) +
                                 " does not match channel dimension " + std::to_string(ch.dim()));
    }
    if (!mu.zero_mean()) {
        throw nonzero_mean("rv_distortion requires a zero-mean measure");
    }
    const int n = mu.dim();
    const Eigen::MatrixXd residual_gain = Eigen::MatrixXd::Identity(n, n) - ch.gain;
    const double signal = (residual_gain * mu.cov * residual_gain.transpose()).trace();
    const double noise = ch.noise_cov.trace();
    return std::sqrt(std::max(0.0, signal + noise) / n);
}

double gaussian_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double tv_exact(double input_var, double output_var) {
    check_variances(input_var, output_var);
    if (input_var == output_var) return 0.0;
    const double ratio = output_var / input_var;
    const double u = ratio - 1.0;
    if (u == 0.0) return 0.0;
    // crossing_sq = ln(ratio) / (1/input_var - 1/output_var), written via
    // log1p(u)/u for stability as the variances coalesce
    const double crossing_sq = input_var * ratio * (std::log1p(u) / u);
    const double crossing = std::sqrt(crossing_sq);
    const double sd_min = std::sqrt(std::min(input_var, output_var));
    const double sd_max = std::sqrt(std::max(input_var, output_var));
    const double tv = 4.0 * (gaussian_cdf(crossing / sd_min) - gaussian_cdf(crossing / sd_max));
    return std::clamp(tv, 0.0, 2.0);
}

double tv_first_order(double input_var, double output_var) {
    check_variances(input_var, output_var);
    const double sd_in = std::sqrt(input_var);
    return kFirstOrderCoeff * std::abs(std::sqrt(output_var) - sd_in) / sd_in;
}

TvBranch tv_branch(double input_var, double output_var) {
    check_variances(input_var, output_var);
    return output_var >= input_var ? TvBranch::Upper : TvBranch::Lower;
}

double tv_invert(double input_var, double delta, TvBranch branch) {
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    if (!(delta >= 0.0) || delta >= 2.0) {
        throw delta_out_of_range("total-variation level must lie in [0, 2), got " +
                                 std::to_string(delta));
    }
    if (delta == 0.0) return input_var;

    // tv is strictly increasing in |t|, t = ln(C/input_var); bracket then bisect.
    const double sign = branch == TvBranch::Upper ? 1.0 : -1.0;
    double lo = 0.0;         // tv(lo) < delta
    double hi = 1e-6;        // grows until tv(hi) >= delta
    const double t_cap = 700.0; // keeps the variance ratio e^{+-t} inside double range
    while (tv_at_log_ratio(sign * hi) < delta) {
        hi *= 2.0;
        if (hi > t_cap) {
            const double sup = tv_at_log_ratio(sign * t_cap);
            throw no_solution("requested total-variation level " + std::to_string(delta) +
                                  " exceeds attainable supremum " + std::to_string(sup) +
                                  " on this branch",
                              sup);
        }
    }
    double t = hi;
    for (int i = 0; i < kBisectionCap; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double residual = tv_at_log_ratio(sign * mid) - delta;
        if (std::abs(residual) <= kDeltaResidualTol) {
            t = mid;
            break;
        }
        if (residual < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        t = 0.5 * (lo + hi);
    }
    return input_var * std::exp(sign * t);
}

} // namespace epsent
