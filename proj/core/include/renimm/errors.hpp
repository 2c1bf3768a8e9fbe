#ifndef RENIMM_ERRORS_HPP
#define RENIMM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace renimm {

/// Invalid parameter value (wrong domain, wrong combination).
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Query outside the range covered by a simulated object (path horizon, level range).
class out_of_range_error : public std::out_of_range {
public:
    explicit out_of_range_error(const std::string& what) : std::out_of_range(what) {}
};

/// A scenario/model/law combination for which no limit statement applies.
class unsupported_scenario_error : public std::runtime_error {
public:
    explicit unsupported_scenario_error(const std::string& what) : std::runtime_error(what) {}
};

/// Simulation would exceed a configured memory/size budget.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, double offending_count)
        : std::runtime_error(what), count(offending_count) {}
    double count;
};

/// Numerical failure (non-PSD covariance beyond tolerance, failed factorization).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double diagnostic = 0.0)
        : std::runtime_error(what), value(diagnostic) {}
    double value;
};

} // namespace renimm

#endif
