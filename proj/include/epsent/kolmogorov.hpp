#ifndef EPSENT_KOLMOGOROV_HPP
#define EPSENT_KOLMOGOROV_HPP

#include <vector>

#include "epsent/gaussian.hpp"

namespace epsent {

/// Reverse water-filling solution for a spectrum under squared-error budget
/// eps^2. allocations[i] = min(eigenvalue_i, water_level), in input order.
struct WaterFillResult {
    double water_level = 0.0; // theta^2
    std::vector<double> allocations;
    double entropy_nats = 0.0;
    int active_count = 0; // eigenvalues strictly above the water level
};

/// Solves sum_i min(eigenvalue_i, theta^2) = eps^2 exactly by walking the
/// sorted breakpoints; no iteration. If eps^2 >= sum of eigenvalues the
/// water level is the largest eigenvalue and the entropy is 0.
WaterFillResult water_fill(const std::vector<double>& eigenvalues, double eps);

/// Kolmogorov epsilon-entropy of a zero-mean Gaussian under the RMS
/// random-variable distance: (1/2) sum ln(max(eigenvalue/theta^2, 1)).
double s_k_rv(const GaussianMeasure& mu, double eps);

WaterFillResult s_k_rv_detail(const GaussianMeasure& mu, double eps);

/// Kolmogorov epsilon-entropy of a 1-D Gaussian under the total-variation
/// distance. Always zero: the identity-output channel (gain 0, noise equal
/// to the input variance) reproduces the state at distance 0 with zero
/// mutual entropy. The witness channel is returned for verification.
struct TvKolmogorovResult {
    double entropy_nats = 0.0;
    GaussianChannel witness;
};

TvKolmogorovResult s_k_tv(double input_var, double eps);

} // namespace epsent

#endif
