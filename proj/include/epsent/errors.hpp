#ifndef EPSENT_ERRORS_HPP
#define EPSENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epsent {

// Root of the library's exception hierarchy.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: wrong shapes, out-of-domain parameters, malformed specs.
// The CLI maps these to exit code 1.
class validation_error : public error {
public:
    using error::error;
};

// Well-formed inputs on which the computation cannot produce a finite,
// reliable answer. The CLI maps these to exit code 2.
class numeric_error : public error {
public:
    using error::error;
};

class dimension_mismatch : public validation_error {
public:
    using validation_error::validation_error;
};

class not_positive_semidefinite : public validation_error {
public:
    using validation_error::validation_error;
};

class non_finite : public validation_error {
public:
    using validation_error::validation_error;
};

class nonzero_mean : public validation_error {
public:
    using validation_error::validation_error;
};

class not_symmetric : public validation_error {
public:
    using validation_error::validation_error;
};

class singular_noise : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class nonpositive_variance : public validation_error {
public:
    using validation_error::validation_error;
};

class delta_out_of_range : public validation_error {
public:
    using validation_error::validation_error;
};

// Requested total-variation level exceeds what the branch can attain.
class no_solution : public numeric_error {
public:
    no_solution(const std::string& msg, double attainable_supremum)
        : numeric_error(msg), supremum(attainable_supremum) {}
    double supremum;
};

class empty_spectrum : public validation_error {
public:
    using validation_error::validation_error;
};

class nonpositive_eps : public validation_error {
public:
    using validation_error::validation_error;
};

class eps_out_of_range : public validation_error {
public:
    using validation_error::validation_error;
};

// Channel gain exceeds the bound under which the closed form for the
// maximum mutual entropy is valid; `gap` is gain_sq - (c - delta)/sigma_sq.
class admissibility_violated : public validation_error {
public:
    admissibility_violated(const std::string& msg, double constraint_gap)
        : validation_error(msg), gap(constraint_gap) {}
    double gap;
};

class zero_delta : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class too_few_points : public validation_error {
public:
    using validation_error::validation_error;
};

class degenerate_grid : public validation_error {
public:
    using validation_error::validation_error;
};

class unsupported_dimension : public validation_error {
public:
    using validation_error::validation_error;
};

class infeasible_class : public validation_error {
public:
    using validation_error::validation_error;
};

class spec_parse_error : public validation_error {
public:
    using validation_error::validation_error;
};

} // namespace epsent

#endif
