#ifndef EPSENT_METRICS_HPP
#define EPSENT_METRICS_HPP

#include "epsent/gaussian.hpp"

namespace epsent {

/// Which side of the reference variance the output variance lies on.
/// Upper: output variance >= input variance; Lower: strictly below.
enum class TvBranch { Upper, Lower };

/// Root-mean-square distortion between a zero-mean Gaussian and its channel
/// output, sqrt((1/n) * (tr((I-Gain) R (I-Gain)^T) + tr Noise)).
double rv_distortion(const GaussianMeasure& mu, const GaussianChannel& ch);

/// Standard normal CDF.
double gaussian_cdf(double x);

/// Total-variation mass between centered 1-D Gaussians with the given
/// variances: the L1 distance between their densities, in [0, 2).
/// Note: this is twice the probabilist's TV distance.
double tv_exact(double input_var, double output_var);

/// First-order estimate of tv_exact near equal variances,
/// (4/sqrt(2*pi)) * |sqrt(output_var) - sqrt(input_var)| / sqrt(input_var),
/// reported as a magnitude; see tv_branch for the side.
double tv_first_order(double input_var, double output_var);

TvBranch tv_branch(double input_var, double output_var);

/// Output variance C with tv_exact(input_var, C) = delta on the requested
/// branch, by bisection in ln(C/input_var). delta must lie in [0, 2).
double tv_invert(double input_var, double delta, TvBranch branch);

} // namespace epsent

#endif
