#include "epsent/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace epsent {

WaterFillResult water_fill(const std::vector<double>& eigenvalues, double eps) {
    if (eigenvalues.empty()) {
        throw empty_spectrum("eigenvalue list is empty");
    }
    if (!(eps > 0.0)) {
        throw nonpositive_eps("eps must be strictly positive, got " + std::to_string(eps));
    }
    for (double v : eigenvalues) {
        if (!std::isfinite(v)) throw non_finite("eigenvalue list contains non-finite entries");
        if (v < 0.0) {
            throw not_positive_semidefinite("eigenvalues must be nonnegative, got " +
                                            std::to_string(v));
        }
    }
    const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
    if (total <= 0.0) {
        throw empty_spectrum("spectrum has no positive eigenvalue");
    }

    const double budget = eps * eps;
    const std::size_t n = eigenvalues.size();
    WaterFillResult result;

    if (budget >= total) {
        result.water_level = *std::max_element(eigenvalues.begin(), eigenvalues.end());
        result.allocations = eigenvalues;
        result.entropy_nats = 0.0;
        result.active_count = 0;
        return result;
    }

    // Ascending walk: with the k smallest eigenvalues below the level,
    // theta^2 = (budget - prefix_sum_k) / (n - k) on [asc[k-1], asc[k]].
    std::vector<double> asc(eigenvalues);
    std::sort(asc.begin(), asc.end());
    double prefix = 0.0;
    double level = budget / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double candidate = (budget - prefix) / static_cast<double>(n - k);
        if (candidate <= asc[k]) {
            level = candidate;
            break;
        }
        prefix += asc[k];
        level = asc[k]; // fallback only hit by rounding at the last breakpoint
    }

    result.water_level = level;
    result.allocations.reserve(n);
    double entropy = 0.0;
    int active = 0;
    for (double v : eigenvalues) {
        result.allocations.push_back(std::min(v, level));
        if (v > level) {
            entropy += 0.5 * std::log(v / level);
            ++active;
        }
    }
    result.entropy_nats = entropy;
    result.active_count = active;
    return result;
}

WaterFillResult s_k_rv_detail(const GaussianMeasure& mu, double eps) {
    if (!mu.zero_mean()) {
        throw nonzero_mean("epsilon-entropy requires a zero-mean measure");
    }
    return water_fill(covariance_spectrum(mu.cov), eps);
}

double s_k_rv(const GaussianMeasure& mu, double eps) {
    return s_k_rv_detail(mu, eps).entropy_nats;
}

TvKolmogorovResult s_k_tv(double input_var, double eps) {
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    if (!(eps > 0.0)) {
        throw nonpositive_eps("eps must be strictly positive");
    }
    return TvKolmogorovResult{0.0, make_channel(0.0, input_var)};
}

} // namespace epsent
