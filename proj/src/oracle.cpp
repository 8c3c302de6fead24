#include "epsent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "epsent/kolmogorov.hpp"
#include "epsent/metrics.hpp"

namespace epsent {

namespace {

constexpr double kGainMax = 1.5;
constexpr double kNoiseFloorFrac = 1e-3;

// One channel grid point of a scalar component: squared distortion and
// mutual-entropy contribution.
struct GridPoint {
    double distortion_sq;
    double info;
    double gain;
    double noise_var;
};

// Full (gain x noise) grid for one eigenvalue. Deterministic order:
// gain-major, noise-minor.
std::vector<GridPoint> component_grid(double eigenvalue, double eps, int resolution) {
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(resolution) * resolution);
    const double floor = kNoiseFloorFrac * std::min(eigenvalue, eps * eps);
    const double log_span = std::log(floor / eigenvalue);
    for (int b = 0; b < resolution; ++b) {
        const double gain = kGainMax * static_cast<double>(b) / (resolution - 1);
        const double miss = (1.0 - gain) * (1.0 - gain) * eigenvalue;
        const double amplified = gain * gain * eigenvalue;
        for (int s = 0; s < resolution; ++s) {
            const double noise =
                eigenvalue * std::exp(log_span * static_cast<double>(s) / (resolution - 1));
            pts.push_back(GridPoint{miss + noise, 0.5 * std::log1p(amplified / noise), gain, noise});
        }
    }
    return pts;
}

std::string sk_grid_description(const std::vector<double>& eigenvalues, double eps,
                                int resolution) {
    std::ostringstream os;
    os << "per component: gain " << resolution << " pts linear [0," << kGainMax << "]; noise "
       << resolution << " pts log (floor " << kNoiseFloorFrac << "*min(eigenvalue, eps^2))";
    os << "; eigenvalues";
    for (double v : eigenvalues) os << " " << v;
    os << "; eps " << eps;
    return os.str();
}

OracleReport finish_report(double oracle, double closed, std::string grid,
                           std::vector<double> best) {
    OracleReport rep;
    rep.oracle_value = oracle;
    rep.closed_form_value = closed;
    rep.abs_gap = std::abs(oracle - closed);
    rep.rel_gap = rep.abs_gap / std::max(std::abs(closed), 1e-12);
    rep.grid = std::move(grid);
    rep.best_channel = std::move(best);
    return rep;
}

} // namespace

OracleReport brute_force_sk(const GaussianMeasure& mu, double eps, int resolution) {
    const int n = mu.dim();
    if (n > 2) {
        throw unsupported_dimension("brute-force search supports dimensions 1 and 2, got " +
                                    std::to_string(n));
    }
    if (resolution < 50) {
        throw too_few_points("grid resolution must be at least 50 per parameter");
    }
    if (!(eps > 0.0)) {
        throw nonpositive_eps("eps must be strictly positive");
    }

    const std::vector<double> eigenvalues = covariance_spectrum(mu.cov);
    const double closed = s_k_rv(mu, eps);
    const double budget = eps * eps;

    // Zero eigenvalues are reproduced exactly at no cost; search the rest.
    std::vector<double> active;
    for (double v : eigenvalues) {
        if (v > 0.0) active.push_back(v);
    }
    if (active.empty()) {
        throw empty_spectrum("spectrum has no positive eigenvalue");
    }

    const std::string grid_desc = sk_grid_description(eigenvalues, eps, resolution);
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_channel;

    if (active.size() == 1) {
        for (const GridPoint& p : component_grid(active[0], eps, resolution)) {
            if (p.distortion_sq <= budget && p.info < best_value) {
                best_value = p.info;
                best_channel = {p.gain, p.noise_var};
            }
        }
    } else {
        const std::vector<GridPoint> first = component_grid(active[0], eps, resolution);
        std::vector<GridPoint> second = component_grid(active[1], eps, resolution);
        // stable order by distortion, then running prefix-min of info so the
        // best second-component point within any budget is a binary search
        std::stable_sort(second.begin(), second.end(),
                         [](const GridPoint& a, const GridPoint& b) {
                             return a.distortion_sq < b.distortion_sq;
                         });
        std::vector<double> prefix_info(second.size());
        std::vector<std::size_t> prefix_arg(second.size());
        double running = std::numeric_limits<double>::infinity();
        std::size_t running_arg = 0;
        for (std::size_t i = 0; i < second.size(); ++i) {
            if (second[i].info < running) {
                running = second[i].info;
                running_arg = i;
            }
            prefix_info[i] = running;
            prefix_arg[i] = running_arg;
        }
        std::vector<double> keys(second.size());
        for (std::size_t i = 0; i < second.size(); ++i) keys[i] = second[i].distortion_sq;

        for (const GridPoint& p : first) {
            const double remaining = budget - p.distortion_sq;
            if (remaining < keys.front()) continue;
            const std::size_t idx =
                static_cast<std::size_t>(std::upper_bound(keys.begin(), keys.end(), remaining) -
                                         keys.begin()) -
                1;
            const double total = p.info + prefix_info[idx];
            if (total < best_value) {
                best_value = total;
                const GridPoint& q = second[prefix_arg[idx]];
                best_channel = {p.gain, p.noise_var, q.gain, q.noise_var};
            }
        }
    }

    if (!std::isfinite(best_value)) {
        throw numeric_error("no feasible channel on the grid; refine it or increase eps");
    }
    return finish_report(best_value, closed, grid_desc, std::move(best_channel));
}

OracleReport brute_force_j(double input_var, double c_delta, double delta, int resolution) {
    if (!(input_var > 0.0)) {
        throw nonpositive_variance("input variance must be strictly positive");
    }
    if (!(c_delta > delta) || !(delta > 0.0)) {
        throw infeasible_class("need output variance > delta > 0, got C=" +
                               std::to_string(c_delta) + " delta=" + std::to_string(delta));
    }
    if (resolution < 2) {
        throw too_few_points("grid resolution must be at least 2");
    }

    double best_value = -std::numeric_limits<double>::infinity();
    double best_noise = delta;
    for (int j = 0; j < resolution; ++j) {
        const double noise =
            delta + (c_delta - delta) * static_cast<double>(j) / (resolution - 1);
        const double value = 0.5 * std::log(c_delta / noise);
        if (value > best_value) {
            best_value = value;
            best_noise = noise;
        }
    }
    const double closed = 0.5 * std::log(c_delta / delta);
    const double best_gain = std::sqrt((c_delta - best_noise) / input_var);

    std::ostringstream os;
    os << "noise " << resolution << " pts linear [" << delta << "," << c_delta << "]";
    return finish_report(best_value, closed, os.str(), {best_gain, best_noise});
}

double quadrature_tv(double input_var, double output_var, int n_points) {
    if (!(input_var > 0.0) || !(output_var > 0.0)) {
        throw nonpositive_variance("variances must be strictly positive");
    }
    if (n_points < 1000) {
        throw too_few_points("quadrature needs at least 1000 points");
    }

    const double sd1 = std::sqrt(input_var);
    const double sd2 = std::sqrt(output_var);
    const double norm1 = 1.0 / (sd1 * std::sqrt(2.0 * M_PI));
    const double norm2 = 1.0 / (sd2 * std::sqrt(2.0 * M_PI));
    const auto density_gap = [&](double x) {
        return std::abs(norm1 * std::exp(-x * x / (2.0 * input_var)) -
                        norm2 * std::exp(-x * x / (2.0 * output_var)));
    };
    const double upper = 10.0 * std::max(sd1, sd2);

    const auto simpson = [&](long panels) {
        const double h = upper / static_cast<double>(panels);
        double odd = 0.0, even = 0.0;
        for (long i = 1; i < panels; i += 2) odd += density_gap(h * static_cast<double>(i));
        for (long i = 2; i < panels; i += 2) even += density_gap(h * static_cast<double>(i));
        return h / 3.0 * (density_gap(0.0) + 4.0 * odd + 2.0 * even + density_gap(upper));
    };

    long panels = n_points + (n_points % 2);
    double estimate = simpson(panels);
    for (int round = 0; round < 14; ++round) {
        panels *= 2;
        const double refined = simpson(panels);
        const bool converged = std::abs(refined - estimate) < 1e-9;
        estimate = refined;
        if (converged) break;
    }
    return 2.0 * estimate;
}

} // namespace epsent
