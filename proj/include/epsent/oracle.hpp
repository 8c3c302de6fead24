#ifndef EPSENT_ORACLE_HPP
#define EPSENT_ORACLE_HPP

#include <string>
#include <vector>

#include "epsent/gaussian.hpp"

namespace epsent {

/// Result of a brute-force check of a closed form against an independent
/// grid search or quadrature.
struct OracleReport {
    double oracle_value = 0.0;
    double closed_form_value = 0.0;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    std::string grid;
    std::vector<double> best_channel; // (gain, noise_var) per component
};

/// Grid minimization of the mutual entropy over channels diagonal in the
/// source eigenbasis, subject to RMS distortion <= eps. Checks the
/// water-filling closed form. Supports n in {1, 2}; resolution is the
/// point count per channel parameter (gain linear on [0, 1.5], noise
/// variance log-spaced below each eigenvalue).
OracleReport brute_force_sk(const GaussianMeasure& mu, double eps, int resolution);

/// Grid maximization of (1/2) ln(c_delta / noise) over the output-equivalence
/// class with output variance c_delta and noise floor delta. Checks the
/// closed form (1/2) ln(c_delta / delta).
OracleReport brute_force_j(double input_var, double c_delta, double delta, int resolution);

/// Composite-Simpson evaluation of the L1 distance between centered 1-D
/// Gaussian densities, with panel doubling until successive estimates agree
/// to 1e-9. Independent check of tv_exact.
double quadrature_tv(double input_var, double output_var, int n_points);

} // namespace epsent

#endif
