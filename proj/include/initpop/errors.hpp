#pragma once

#include <stdexcept>
#include <string>

namespace initpop {

/// Invalid distribution or algorithm parameter.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Vector or matrix dimensions do not agree.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Optimizer or experiment configuration cannot be executed.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unknown catalog name (function, algorithm, init method).
struct LookupError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Malformed input document or CSV row.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Statistic is undefined for the given data (e.g. zero variance).
struct StatisticsError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace initpop
