#ifndef EPSENT_DIMENSION_HPP
#define EPSENT_DIMENSION_HPP

#include <string>
#include <vector>

#include "epsent/gaussian.hpp"
#include "epsent/ohya.hpp"

namespace epsent {

enum class Norm { RV, TV };

/// What to sweep: a measure, the state distance, and (for TV) how the
/// entropy is evaluated. TV requires a 1-D measure.
struct SweepSpec {
    GaussianMeasure measure;
    Norm norm = Norm::RV;
    TvMode mode = TvMode::FirstOrder;
};

struct SweepRow {
    double eps = 0.0;
    double entropy_nats = 0.0;
    Norm norm = Norm::RV;
    std::string extra_name;  // "theta2" for RV, "branch_variance" for TV
    double extra_value = 0.0;
};

/// One entropy evaluation per grid point; the grid must be strictly
/// decreasing. A failing point aborts the sweep with its eps in the message.
std::vector<SweepRow> entropy_sweep(const SweepSpec& spec, const std::vector<double>& eps_grid);

enum class DimensionMethod { Regression, LastRatio };

struct DimensionEstimate {
    double slope = 0.0;
    double std_error = 0.0;
    int points_used = 0;
    DimensionMethod method = DimensionMethod::Regression;
};

/// Capacity-dimension estimate from swept entropies: the limit slope of
/// S(eps) against ln(1/eps). Regression fits all rows by least squares;
/// LastRatio returns S(eps_min)/ln(1/eps_min).
DimensionEstimate capacity_dimension(const std::vector<SweepRow>& rows, DimensionMethod method);

/// Strictly decreasing geometric grid from eps_max down to eps_min.
std::vector<double> geometric_grid(double eps_max, double eps_min, int points);

} // namespace epsent

#endif
