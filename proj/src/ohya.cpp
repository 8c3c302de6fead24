#include "epsent/ohya.hpp"

#include <cmath>
#include <string>

#include "epsent/kolmogorov.hpp"

namespace epsent {

namespace {

constexpr double kExpansionCoeff = 0.6266570686577501; // sqrt(2*pi)/4

double first_order_j(double input_var, double delta, TvBranch branch) {
    const double correction = std::log1p(kExpansionCoeff * delta);
    const double base = 0.5 * std::log(input_var / delta);
    return branch == TvBranch::Upper ? base + correction : base - correction;
}

} // namespace

double max_mutual_entropy_tv(double input_var, const GaussianChannel& ch, TvMode mode) {
    if (ch.dim() != 1) {
        throw unsupported_dimension("total-variation entropies are defined for 1-D channels");
    }
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    const double gain = ch.gain(0, 0);
    const double noise_var = ch.noise_cov(0, 0);
    const double out_var = gain * gain * input_var + noise_var;
    const double delta = tv_exact(input_var, out_var);
    if (delta == 0.0) {
        throw zero_delta("channel output equals the input state; maximum mutual entropy diverges");
    }
    const double gain_bound = (out_var - delta) / input_var;
    if (gain * gain > gain_bound) {
        throw admissibility_violated(
            "gain^2 = " + std::to_string(gain * gain) + " exceeds (C - delta)/input_var = " +
                std::to_string(gain_bound) + " (equivalently noise_var < delta)",
            gain * gain - gain_bound);
    }
    if (mode == TvMode::Exact) {
        return 0.5 * std::log(out_var / delta);
    }
    return first_order_j(input_var, delta, tv_branch(input_var, out_var));
}

SoTvResult s_o_tv(double input_var, double eps, TvMode mode) {
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    if (!(eps > 0.0) || eps >= 2.0) {
        throw eps_out_of_range("eps must lie in (0, 2) for the total-variation norm, got " +
                               std::to_string(eps));
    }
    SoTvResult result;
    if (mode == TvMode::Exact) {
        result.branch_variance = tv_invert(input_var, eps, TvBranch::Lower);
        result.entropy_nats = 0.5 * std::log(result.branch_variance / eps);
    } else {
        const double shrink = 1.0 + kExpansionCoeff * eps;
        result.branch_variance = input_var / (shrink * shrink);
        result.entropy_nats = first_order_j(input_var, eps, TvBranch::Lower);
    }
    if (result.entropy_nats < 0.0) {
        // outside the validity range of the small-eps closed form
        result.entropy_nats = 0.0;
        result.clamped = true;
    }
    return result;
}

double s_o_rv(const GaussianMeasure& mu, double eps) {
    return s_k_rv(mu, eps);
}

std::vector<std::pair<double, double>> s_o_tv_delta_scan(double input_var, double eps,
                                                         TvMode mode, int points) {
    if (points < 2) {
        throw too_few_points("delta scan needs at least 2 points");
    }
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    if (!(eps > 0.0) || eps >= 2.0) {
        throw eps_out_of_range("eps must lie in (0, 2)");
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(points);
    for (int i = 0; i < points; ++i) {
        // geometric grid over (0, eps], ending exactly at eps
        const double delta = eps * std::pow(1e-3, static_cast<double>(points - 1 - i) /
                                                      static_cast<double>(points - 1));
        double value;
        if (mode == TvMode::Exact) {
            const double c_lower = tv_invert(input_var, delta, TvBranch::Lower);
            value = 0.5 * std::log(c_lower / delta);
        } else {
            value = first_order_j(input_var, delta, TvBranch::Lower);
        }
        curve.emplace_back(delta, value);
    }
    return curve;
}

} // namespace epsent
