#ifndef EPSENT_OHYA_HPP
#define EPSENT_OHYA_HPP

#include <vector>

#include "epsent/gaussian.hpp"
#include "epsent/metrics.hpp"

namespace epsent {

/// How total-variation entropies are evaluated. FirstOrder uses the closed
/// small-delta expansion with its remainder dropped; Exact inverts tv_exact
/// numerically for the branch variance.
enum class TvMode { FirstOrder, Exact };

/// Maximum mutual entropy over the output-equivalence class of a 1-D channel
/// under the total-variation distance: the supremum of (1/2) ln(C/noise)
/// over channels with output variance C and noise floor delta, attained at
/// the floor. Throws zero_delta when the channel reproduces the input
/// exactly (the supremum diverges) and admissibility_violated when the
/// gain exceeds the bound (C - delta)/input_var under which the closed
/// form holds.
double max_mutual_entropy_tv(double input_var, const GaussianChannel& ch, TvMode mode);

struct SoTvResult {
    double entropy_nats = 0.0;
    double branch_variance = 0.0; // output variance of the minimizing channel class
    bool clamped = false;         // closed form went negative and was clamped to 0
};

/// Ohya epsilon-entropy of a 1-D Gaussian under the total-variation
/// distance: the infimum over distances delta <= eps of the branch-minimal
/// maximum mutual entropy, attained at delta = eps on the lower branch.
SoTvResult s_o_tv(double input_var, double eps, TvMode mode);

/// Ohya epsilon-entropy under the RMS random-variable distance; coincides
/// with the Kolmogorov value.
double s_o_rv(const GaussianMeasure& mu, double eps);

/// Diagnostic curve behind s_o_tv: (delta, lower-branch J(delta)) on a grid
/// over (0, eps]. The infimum sits at the last point; exposed to exhibit the
/// monotone decrease that justifies the closed-form evaluation.
std::vector<std::pair<double, double>> s_o_tv_delta_scan(double input_var, double eps,
                                                         TvMode mode, int points);

} // namespace epsent

#endif
