#include "epsent/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace epsent {

namespace {

constexpr double kPsdRelTol = 1e-12;
constexpr double kSymAbsTol = 1e-12;

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
    return (m + m.transpose()) / 2.0;
}

void check_square(const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw dimension_mismatch(std::string(name) + " must be a square matrix of dimension >= 1");
    }
}

void check_finite(const Eigen::MatrixXd& m, const char* name) {
    if (!m.allFinite()) {
        throw non_finite(std::string(name) + " contains non-finite entries");
    }
}

// PSD check on an already-symmetric matrix; tolerance relative to the
// largest-magnitude eigenvalue with a unit floor.
void check_psd(const Eigen::MatrixXd& sym, const char* name) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (ev.minCoeff() < -kPsdRelTol * scale) {
        throw not_positive_semidefinite(std::string(name) + " has eigenvalue " +
                                        std::to_string(ev.minCoeff()) + " below tolerance");
    }
}

// log(det M) for symmetric positive-definite M via Cholesky.
// Returns -inf-ish failure through the bool.
bool logdet_spd(const Eigen::MatrixXd& m, double& out) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) return false;
    out = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return true;
}

Eigen::MatrixXd output_cov(const GaussianMeasure& mu, const GaussianChannel& ch) {
    return symmetrize(ch.gain * mu.cov * ch.gain.transpose()) + ch.noise_cov;
}

void check_channel_input(const GaussianMeasure& mu, const GaussianChannel& ch) {
    if (mu.dim() != ch.dim()) {
        throw dimension_mismatch("measure dimension " + std::to_string(mu.dim()) +
                                 " does not match channel dimension " + std::to_string(ch.dim()));
    }
    if (!mu.zero_mean()) {
        throw nonzero_mean("channel operations require a zero-mean measure");
    }
}

} // namespace

Eigen::MatrixXd CompoundCovariance::input_block() const {
    const int n = dim();
    return c.topLeftCorner(n, n);
}

Eigen::MatrixXd CompoundCovariance::output_block() const {
    const int n = dim();
    return c.bottomRightCorner(n, n);
}

GaussianMeasure make_measure(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    check_square(cov, "cov");
    if (mean.size() != cov.rows()) {
        throw dimension_mismatch("mean length " + std::to_string(mean.size()) +
                                 " does not match covariance dimension " + std::to_string(cov.rows()));
    }
    if (!mean.allFinite()) throw non_finite("mean contains non-finite entries");
    check_finite(cov, "cov");
    Eigen::MatrixXd sym = symmetrize(cov);
    check_psd(sym, "cov");
    return GaussianMeasure{mean, std::move(sym)};
}

GaussianChannel make_channel(const Eigen::MatrixXd& gain, const Eigen::MatrixXd& noise_cov) {
    check_square(gain, "gain");
    check_square(noise_cov, "noise_cov");
    if (gain.rows() != noise_cov.rows()) {
        throw dimension_mismatch("gain and noise_cov dimensions differ");
    }
    check_finite(gain, "gain");
    check_finite(noise_cov, "noise_cov");
    Eigen::MatrixXd sym = symmetrize(noise_cov);
    check_psd(sym, "noise_cov");
    return GaussianChannel{gain, std::move(sym)};
}

GaussianChannel make_channel(double beta, double sigma0_sq) {
    Eigen::MatrixXd a(1, 1), r0(1, 1);
    a(0, 0) = beta;
    r0(0, 0) = sigma0_sq;
    return make_channel(a, r0);
}

GaussianMeasure apply_channel(const GaussianMeasure& mu, const GaussianChannel& ch) {
    check_channel_input(mu, ch);
    return make_measure(Eigen::VectorXd::Zero(mu.dim()), output_cov(mu, ch));
}

CompoundCovariance compound_covariance(const GaussianMeasure& mu, const GaussianChannel& ch) {
    check_channel_input(mu, ch);
    const int n = mu.dim();
    const Eigen::MatrixXd cross = ch.gain * mu.cov; // Gain*R; its transpose is R*Gain^T
    Eigen::MatrixXd c(2 * n, 2 * n);
    c.topLeftCorner(n, n) = mu.cov;
    c.topRightCorner(n, n) = cross.transpose();
    c.bottomLeftCorner(n, n) = cross;
    c.bottomRightCorner(n, n) = output_cov(mu, ch);
    return CompoundCovariance{std::move(c)};
}

double mutual_entropy(const GaussianMeasure& mu, const GaussianChannel& ch) {
    check_channel_input(mu, ch);
    double logdet_noise = 0.0;
    if (!logdet_spd(ch.noise_cov, logdet_noise)) {
        throw singular_noise("noise covariance is not strictly positive definite");
    }
    if (logdet_noise <= std::log(1e-300)) {
        throw singular_noise("noise covariance determinant underflows; mutual entropy diverges");
    }
    double logdet_out = 0.0;
    if (!logdet_spd(output_cov(mu, ch), logdet_out)) {
        throw numeric_error("output covariance factorization failed");
    }
    return std::max(0.0, 0.5 * (logdet_out - logdet_noise));
}

std::vector<double> covariance_spectrum(const Eigen::MatrixXd& cov) {
    check_square(cov, "cov");
    check_finite(cov, "cov");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymAbsTol * scale) {
        throw not_symmetric("matrix is not symmetric within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    const double tol = kPsdRelTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    for (double& v : out) {
        if (v < -tol) {
            throw not_positive_semidefinite("matrix has eigenvalue " + std::to_string(v) +
                                            " below tolerance");
        }
        if (v < 0.0) v = 0.0;
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

} // namespace epsent
