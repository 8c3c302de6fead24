#ifndef EPSENT_GAUSSIAN_HPP
#define EPSENT_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <vector>

#include "epsent/errors.hpp"

namespace epsent {

/// Centered or general Gaussian measure on R^n, held as mean vector and
/// covariance matrix. Construct through make_measure, which symmetrizes
/// the covariance and validates positive semidefiniteness.
struct GaussianMeasure {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    int dim() const { return static_cast<int>(cov.rows()); }
    bool zero_mean() const { return (mean.array() == 0.0).all(); }
};

/// Linear-gain Gaussian channel: x -> gain * x + noise, with noise drawn
/// from a centered Gaussian with covariance noise_cov.
struct GaussianChannel {
    Eigen::MatrixXd gain;
    Eigen::MatrixXd noise_cov;

    int dim() const { return static_cast<int>(gain.rows()); }
};

/// Joint input/output covariance of a measure pushed through a channel:
/// [[R, R*Gain^T], [Gain*R, Gain*R*Gain^T + Noise]].
struct CompoundCovariance {
    Eigen::MatrixXd c;

    int dim() const { return static_cast<int>(c.rows()) / 2; }

    Eigen::MatrixXd input_block() const;
    Eigen::MatrixXd output_block() const;
};

GaussianMeasure make_measure(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

GaussianChannel make_channel(const Eigen::MatrixXd& gain, const Eigen::MatrixXd& noise_cov);

/// 1-D convenience: gain beta, noise variance sigma0_sq.
GaussianChannel make_channel(double beta, double sigma0_sq);

/// Output measure of a zero-mean Gaussian under a Gaussian channel:
/// [0, Gain*R*Gain^T + Noise].
GaussianMeasure apply_channel(const GaussianMeasure& mu, const GaussianChannel& ch);

CompoundCovariance compound_covariance(const GaussianMeasure& mu, const GaussianChannel& ch);

/// Mutual entropy between a zero-mean Gaussian input and its channel output,
/// (1/2) ln(|Gain*R*Gain^T + Noise| / |Noise|), in nats. Requires strictly
/// positive-definite noise covariance.
double mutual_entropy(const GaussianMeasure& mu, const GaussianChannel& ch);

/// Eigenvalues of a symmetric PSD matrix, sorted descending. Eigenvalues in
/// [-tol, 0) are clamped to zero, tol = 1e-12 * max(1, largest |eigenvalue|).
std::vector<double> covariance_spectrum(const Eigen::MatrixXd& cov);

} // namespace epsent

#endif
