#include "epsent/dimension.hpp"

#include <cmath>
#include <set>
#include <string>

#include "epsent/kolmogorov.hpp"

namespace epsent {

namespace {

SweepRow evaluate_row(const SweepSpec& spec, double eps) {
    SweepRow row;
    row.eps = eps;
    row.norm = spec.norm;
    if (spec.norm == Norm::RV) {
        const WaterFillResult wf = s_k_rv_detail(spec.measure, eps);
        row.entropy_nats = wf.entropy_nats;
        row.extra_name = "theta2";
        row.extra_value = wf.water_level;
    } else {
        if (spec.measure.dim() != 1) {
            throw unsupported_dimension("total-variation sweeps require a 1-D measure");
        }
        const SoTvResult so = s_o_tv(spec.measure.cov(0, 0), eps, spec.mode);
        row.entropy_nats = so.entropy_nats;
        row.extra_name = "branch_variance";
        row.extra_value = so.branch_variance;
    }
    return row;
}

} // namespace

std::vector<SweepRow> entropy_sweep(const SweepSpec& spec, const std::vector<double>& eps_grid) {
    if (eps_grid.empty()) {
        throw degenerate_grid("eps grid is empty");
    }
    for (std::size_t i = 1; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] < eps_grid[i - 1])) {
            throw degenerate_grid("eps grid must be strictly decreasing");
        }
    }
    std::vector<SweepRow> rows;
    rows.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        try {
            rows.push_back(evaluate_row(spec, eps));
        } catch (const validation_error& e) {
            throw validation_error("sweep failed at eps=" + std::to_string(eps) + ": " + e.what());
        } catch (const numeric_error& e) {
            throw numeric_error("sweep failed at eps=" + std::to_string(eps) + ": " + e.what());
        }
    }
    return rows;
}

DimensionEstimate capacity_dimension(const std::vector<SweepRow>& rows, DimensionMethod method) {
    if (rows.size() < 2) {
        throw too_few_points("capacity dimension needs at least 2 sweep rows, got " +
                             std::to_string(rows.size()));
    }
    std::set<double> distinct;
    for (const SweepRow& r : rows) distinct.insert(r.eps);
    if (distinct.size() != rows.size()) {
        throw degenerate_grid("sweep rows contain duplicate eps values");
    }

    DimensionEstimate est;
    est.method = method;

    if (method == DimensionMethod::LastRatio) {
        const SweepRow* smallest = &rows.front();
        for (const SweepRow& r : rows) {
            if (r.eps < smallest->eps) smallest = &r;
        }
        const double x = std::log(1.0 / smallest->eps);
        if (x <= 0.0) {
            throw degenerate_grid("last-ratio estimate needs eps_min < 1");
        }
        est.slope = smallest->entropy_nats / x;
        est.std_error = 0.0;
        est.points_used = 1;
        return est;
    }

    const std::size_t m = rows.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (const SweepRow& r : rows) {
        mean_x += std::log(1.0 / r.eps);
        mean_y += r.entropy_nats;
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (const SweepRow& r : rows) {
        const double dx = std::log(1.0 / r.eps) - mean_x;
        sxx += dx * dx;
        sxy += dx * (r.entropy_nats - mean_y);
    }
    if (sxx <= 0.0) {
        throw degenerate_grid("regression abscissae are degenerate");
    }
    est.slope = sxy / sxx;
    est.points_used = static_cast<int>(m);
    if (m > 2) {
        double rss = 0.0;
        for (const SweepRow& r : rows) {
            const double x = std::log(1.0 / r.eps);
            const double fitted = mean_y + est.slope * (x - mean_x);
            const double resid = r.entropy_nats - fitted;
            rss += resid * resid;
        }
        est.std_error = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
    }
    return est;
}

std::vector<double> geometric_grid(double eps_max, double eps_min, int points) {
    if (points < 1) {
        throw too_few_points("grid needs at least 1 point");
    }
    if (!(eps_min > 0.0) || !(eps_max >= eps_min)) {
        throw degenerate_grid("grid bounds must satisfy 0 < eps_min <= eps_max");
    }
    if (points == 1) {
        return {eps_max};
    }
    if (eps_max == eps_min) {
        throw degenerate_grid("geometric grid with equal bounds needs a single point");
    }
    std::vector<double> grid;
    grid.reserve(points);
    const double log_ratio = std::log(eps_min / eps_max);
    for (int i = 0; i < points; ++i) {
        grid.push_back(eps_max * std::exp(log_ratio * static_cast<double>(i) /
                                          static_cast<double>(points - 1)));
    }
    return grid;
}

} // namespace epsent
