// Command-line front end: epsilon-entropies, state distances, capacity
// dimension, and brute-force cross-checks for Gaussian measures.
//
// Results are printed as single-line JSON on stdout (CSV for `sweep`).
// Errors are single-line JSON on stderr; exit code 1 for invalid input,
// 2 for numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "epsent/dimension.hpp"
#include "epsent/gaussian.hpp"
#include "epsent/kolmogorov.hpp"
#include "epsent/metrics.hpp"
#include "epsent/ohya.hpp"
#include "epsent/oracle.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct ProblemSpec {
    int dim = 0;
    Eigen::MatrixXd cov;
    Eigen::VectorXd mean;
    epsent::Norm norm = epsent::Norm::RV;
    epsent::TvMode mode = epsent::TvMode::FirstOrder;
    std::string units = "nats";

    epsent::GaussianMeasure measure() const { return epsent::make_measure(mean, cov); }
};

std::string load_text(const std::string& arg, const char* what) {
    const std::size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        return arg; // inline JSON
    }
    std::ifstream in(arg);
    if (!in) {
        throw epsent::spec_parse_error(std::string("cannot read ") + what + " file: " + arg);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw epsent::spec_parse_error(std::string(what) + " is not valid JSON: " + e.what());
    }
}

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        throw epsent::spec_parse_error("field '" + field + "' must be a number");
    }
    return j.get<double>();
}

Eigen::MatrixXd parse_matrix(const json& j, int dim, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw epsent::spec_parse_error("field '" + field + "' must be an array of " +
                                       std::to_string(dim) + " rows");
    }
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw epsent::spec_parse_error("field '" + field + "' row " + std::to_string(r) +
                                           " must hold " + std::to_string(dim) + " numbers");
        }
        for (int c = 0; c < dim; ++c) {
            m(r, c) = require_number(row[c], field);
        }
    }
    return m;
}

ProblemSpec parse_spec(const std::string& arg) {
    const json j = parse_json(load_text(arg, "spec"), "spec");
    if (!j.is_object()) throw epsent::spec_parse_error("spec must be a JSON object");

    ProblemSpec spec;
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
        throw epsent::spec_parse_error("field 'dim' must be a positive integer");
    }
    spec.dim = j["dim"].get<int>();

    if (!j.contains("cov")) throw epsent::spec_parse_error("field 'cov' is required");
    spec.cov = parse_matrix(j["cov"], spec.dim, "cov");

    spec.mean = Eigen::VectorXd::Zero(spec.dim);
    if (j.contains("mean")) {
        const json& mean = j["mean"];
        if (!mean.is_array() || static_cast<int>(mean.size()) != spec.dim) {
            throw epsent::spec_parse_error("field 'mean' must hold " + std::to_string(spec.dim) +
                                           " numbers");
        }
        for (int i = 0; i < spec.dim; ++i) spec.mean(i) = require_number(mean[i], "mean");
    }

    if (!j.contains("norm") || !j["norm"].is_string()) {
        throw epsent::spec_parse_error("field 'norm' must be \"rv\" or \"tv\"");
    }
    const std::string norm = j["norm"].get<std::string>();
    if (norm == "rv") {
        spec.norm = epsent::Norm::RV;
    } else if (norm == "tv") {
        spec.norm = epsent::Norm::TV;
    } else {
        throw epsent::spec_parse_error("field 'norm' must be \"rv\" or \"tv\", got \"" + norm +
                                       "\"");
    }
    if (spec.norm == epsent::Norm::TV && spec.dim != 1) {
        throw epsent::spec_parse_error("field 'norm': \"tv\" requires dim = 1");
    }

    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw epsent::spec_parse_error("field 'mode' must be a string");
        const std::string mode = j["mode"].get<std::string>();
        if (mode == "first-order") {
            spec.mode = epsent::TvMode::FirstOrder;
        } else if (mode == "exact") {
            spec.mode = epsent::TvMode::Exact;
        } else {
            throw epsent::spec_parse_error(
                "field 'mode' must be \"first-order\" or \"exact\", got \"" + mode + "\"");
        }
    }

    if (j.contains("units")) {
        if (!j["units"].is_string()) throw epsent::spec_parse_error("field 'units' must be a string");
        spec.units = j["units"].get<std::string>();
        if (spec.units != "nats" && spec.units != "bits") {
            throw epsent::spec_parse_error("field 'units' must be \"nats\" or \"bits\", got \"" +
                                           spec.units + "\"");
        }
    }
    return spec;
}

epsent::GaussianChannel parse_channel(const std::string& arg) {
    const json j = parse_json(load_text(arg, "channel"), "channel");
    if (!j.is_object()) throw epsent::spec_parse_error("channel must be a JSON object");
    if (j.contains("beta") || j.contains("sigma0_sq")) {
        if (!j.contains("beta") || !j.contains("sigma0_sq")) {
            throw epsent::spec_parse_error("scalar channel needs both 'beta' and 'sigma0_sq'");
        }
        return epsent::make_channel(require_number(j["beta"], "beta"),
                                    require_number(j["sigma0_sq"], "sigma0_sq"));
    }
    if (!j.contains("a") || !j.contains("r0")) {
        throw epsent::spec_parse_error("channel needs 'a' and 'r0' matrices (or 'beta'/'sigma0_sq')");
    }
    if (!j["a"].is_array() || j["a"].empty()) {
        throw epsent::spec_parse_error("field 'a' must be a non-empty matrix");
    }
    const int dim = static_cast<int>(j["a"].size());
    return epsent::make_channel(parse_matrix(j["a"], dim, "a"), parse_matrix(j["r0"], dim, "r0"));
}

// The one place entropies leave the library: nats stay untouched, bits
// divide by ln 2 exactly once.
double in_units(double entropy_nats, const std::string& units) {
    return units == "bits" ? entropy_nats / kLn2 : entropy_nats;
}

std::string resolve_units(const ProblemSpec& spec, const std::string& flag) {
    return flag.empty() ? spec.units : flag;
}

void emit(const json& out) { std::cout << out.dump() << "\n"; }

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<epsent::SweepRow>& rows) {
    os << "eps,entropy_nats,norm,extra1_name,extra1_value\n";
    for (const epsent::SweepRow& row : rows) {
        os << format_full(row.eps) << ',' << format_full(row.entropy_nats) << ','
           << (row.norm == epsent::Norm::RV ? "rv" : "tv") << ',' << row.extra_name << ','
           << format_full(row.extra_value) << "\n";
    }
}

json rows_json(const std::vector<epsent::SweepRow>& rows) {
    json arr = json::array();
    for (const epsent::SweepRow& row : rows) {
        arr.push_back(json{{"eps", row.eps},
                           {"entropy_nats", row.entropy_nats},
                           {"norm", row.norm == epsent::Norm::RV ? "rv" : "tv"},
                           {"extra1_name", row.extra_name},
                           {"extra1_value", row.extra_value}});
    }
    return arr;
}

json report_json(const epsent::OracleReport& rep) {
    return json{{"oracle_value", rep.oracle_value},
                {"closed_form_value", rep.closed_form_value},
                {"abs_gap", rep.abs_gap},
                {"rel_gap", rep.rel_gap},
                {"grid", rep.grid},
                {"argmin_or_argmax", rep.best_channel}};
}

epsent::TvMode parse_mode_flag(const std::string& mode) {
    if (mode == "first-order") return epsent::TvMode::FirstOrder;
    if (mode == "exact") return epsent::TvMode::Exact;
    throw epsent::spec_parse_error("--mode must be first-order or exact, got " + mode);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"epsilon-entropies and capacity dimension of Gaussian measures"};
    app.require_subcommand(1);

    std::string spec_arg, channel_arg, mode_flag, units_flag, method_flag, out_path;
    double eps = 0.0, sigma2 = 0.0, out_var = 0.0, delta = 0.0;
    double eps_min = 0.0, eps_max = 0.0;
    int points = 8, grid_res = 400, quad_points = 2048, scan_deltas = 0;

    CLI::App* kolmogorov = app.add_subcommand("kolmogorov", "Kolmogorov epsilon-entropy");
    kolmogorov->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    kolmogorov->add_option("--eps", eps, "distortion level")->required();
    kolmogorov->add_option("--units", units_flag, "nats|bits (overrides spec)");

    CLI::App* ohya = app.add_subcommand("ohya", "Ohya epsilon-entropy");
    ohya->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    ohya->add_option("--eps", eps, "state-distance level")->required();
    ohya->add_option("--mode", mode_flag, "first-order|exact (overrides spec)");
    ohya->add_option("--units", units_flag, "nats|bits (overrides spec)");
    ohya->add_option("--scan-deltas", scan_deltas,
                     "debug: print the delta/entropy curve to stderr with this many points");

    CLI::App* mutual = app.add_subcommand("mutual", "mutual entropy of a measure and a channel");
    mutual->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    mutual->add_option("--channel", channel_arg, "channel (inline JSON or file)")->required();
    mutual->add_option("--units", units_flag, "nats|bits (overrides spec)");

    CLI::App* tv = app.add_subcommand("tv", "total variation between centered 1-D Gaussians");
    tv->add_option("--sigma2", sigma2, "input variance")->required();
    tv->add_option("--out-var", out_var, "output variance")->required();
    tv->add_option("--method", method_flag, "exact|first-order|quadrature (default exact)");

    CLI::App* dimension = app.add_subcommand("dimension", "capacity dimension from an eps sweep");
    dimension->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    dimension->add_option("--eps-min", eps_min, "smallest eps")->required();
    dimension->add_option("--eps-max", eps_max, "largest eps")->required();
    dimension->add_option("--points", points, "grid size (default 8)");
    dimension->add_option("--method", method_flag, "regression|last-ratio (default regression)");

    CLI::App* sweep = app.add_subcommand("sweep", "entropy sweep written as CSV");
    sweep->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    sweep->add_option("--eps-min", eps_min, "smallest eps")->required();
    sweep->add_option("--eps-max", eps_max, "largest eps")->required();
    sweep->add_option("--points", points, "grid size (default 8)");
    sweep->add_option("--out", out_path, "output CSV path ('-' for stdout)")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
    oracle->require_subcommand(1);
    CLI::App* oracle_sk = oracle->add_subcommand("sk", "grid search vs water-filling");
    oracle_sk->add_option("--spec", spec_arg, "problem spec (inline JSON or file)")->required();
    oracle_sk->add_option("--eps", eps, "distortion level")->required();
    oracle_sk->add_option("--grid", grid_res, "points per channel parameter (default 400)");
    CLI::App* oracle_j = oracle->add_subcommand("j", "output-class search vs closed form");
    oracle_j->add_option("--sigma2", sigma2, "input variance")->required();
    oracle_j->add_option("--out-var", out_var, "output variance of the class")->required();
    oracle_j->add_option("--delta", delta, "total-variation level / noise floor")->required();
    oracle_j->add_option("--grid", grid_res, "grid size (default 400)");
    CLI::App* oracle_tv = oracle->add_subcommand("tv", "quadrature vs closed-form total variation");
    oracle_tv->add_option("--sigma2", sigma2, "input variance")->required();
    oracle_tv->add_option("--out-var", out_var, "output variance")->required();
    oracle_tv->add_option("--points", quad_points, "initial quadrature points (default 2048)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }

    try {
        if (kolmogorov->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            const std::string units = resolve_units(spec, units_flag);
            json out;
            if (spec.norm == epsent::Norm::RV) {
                const epsent::WaterFillResult wf = epsent::s_k_rv_detail(spec.measure(), eps);
                out = json{{"eps", eps},
                           {"entropy", in_units(wf.entropy_nats, units)},
                           {"theta2", wf.water_level},
                           {"allocations", wf.allocations}};
            } else {
                const epsent::TvKolmogorovResult r = epsent::s_k_tv(spec.cov(0, 0), eps);
                out = json{{"eps", eps},
                           {"entropy", in_units(r.entropy_nats, units)},
                           {"theta2", 0.0},
                           {"allocations", json::array()}};
            }
            emit(out);
        } else if (ohya->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            const std::string units = resolve_units(spec, units_flag);
            const epsent::TvMode mode =
                mode_flag.empty() ? spec.mode : parse_mode_flag(mode_flag);
            json out;
            if (spec.norm == epsent::Norm::RV) {
                const epsent::WaterFillResult wf = epsent::s_k_rv_detail(spec.measure(), eps);
                out = json{{"eps", eps},
                           {"entropy", in_units(wf.entropy_nats, units)},
                           {"branch_variance", wf.water_level}};
            } else {
                const double input_var = spec.cov(0, 0);
                if (scan_deltas > 0) {
                    for (const auto& [d, value] :
                         epsent::s_o_tv_delta_scan(input_var, eps, mode, scan_deltas)) {
                        std::cerr << format_full(d) << ',' << format_full(value) << "\n";
                    }
                }
                const epsent::SoTvResult r = epsent::s_o_tv(input_var, eps, mode);
                out = json{{"eps", eps},
                           {"entropy", in_units(r.entropy_nats, units)},
                           {"branch_variance", r.branch_variance}};
            }
            emit(out);
        } else if (mutual->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            const std::string units = resolve_units(spec, units_flag);
            const double value = epsent::mutual_entropy(spec.measure(), parse_channel(channel_arg));
            emit(json{{"mutual_entropy", in_units(value, units)}});
        } else if (tv->parsed()) {
            double value = 0.0;
            if (method_flag.empty() || method_flag == "exact") {
                value = epsent::tv_exact(sigma2, out_var);
            } else if (method_flag == "first-order") {
                value = epsent::tv_first_order(sigma2, out_var);
            } else if (method_flag == "quadrature") {
                value = epsent::quadrature_tv(sigma2, out_var, quad_points);
            } else {
                throw epsent::spec_parse_error(
                    "--method must be exact, first-order or quadrature, got " + method_flag);
            }
            emit(json{{"tv", value}});
        } else if (dimension->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            epsent::SweepSpec sweep_spec{spec.measure(), spec.norm, spec.mode};
            const std::vector<epsent::SweepRow> rows =
                epsent::entropy_sweep(sweep_spec, epsent::geometric_grid(eps_max, eps_min, points));
            epsent::DimensionMethod method = epsent::DimensionMethod::Regression;
            if (method_flag == "last-ratio") {
                method = epsent::DimensionMethod::LastRatio;
            } else if (!method_flag.empty() && method_flag != "regression") {
                throw epsent::spec_parse_error("--method must be regression or last-ratio, got " +
                                               method_flag);
            }
            const epsent::DimensionEstimate est = epsent::capacity_dimension(rows, method);
            emit(json{{"dimension", est.slope}, {"stderr", est.std_error}, {"rows", rows_json(rows)}});
        } else if (sweep->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            epsent::SweepSpec sweep_spec{spec.measure(), spec.norm, spec.mode};
            const std::vector<epsent::SweepRow> rows =
                epsent::entropy_sweep(sweep_spec, epsent::geometric_grid(eps_max, eps_min, points));
            if (out_path == "-") {
                write_csv(std::cout, rows);
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    throw epsent::spec_parse_error("cannot open output file: " + out_path);
                }
                write_csv(out, rows);
            }
        } else if (oracle_sk->parsed()) {
            const ProblemSpec spec = parse_spec(spec_arg);
            emit(report_json(epsent::brute_force_sk(spec.measure(), eps, grid_res)));
        } else if (oracle_j->parsed()) {
            emit(report_json(epsent::brute_force_j(sigma2, out_var, delta, grid_res)));
        } else if (oracle_tv->parsed()) {
            const double oracle_value = epsent::quadrature_tv(sigma2, out_var, quad_points);
            const double closed = epsent::tv_exact(sigma2, out_var);
            epsent::OracleReport rep;
            rep.oracle_value = oracle_value;
            rep.closed_form_value = closed;
            rep.abs_gap = std::abs(oracle_value - closed);
            rep.rel_gap = rep.abs_gap / std::max(std::abs(closed), 1e-12);
            rep.grid = "simpson from " + std::to_string(quad_points) +
                       " points, doubled until successive estimates differ < 1e-9";
            emit(report_json(rep));
        }
    } catch (const epsent::validation_error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    } catch (const epsent::numeric_error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
