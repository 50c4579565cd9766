#ifndef INVSTAT_ERRORS_HPP
#define INVSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace invstat {

/// Rejected input: malformed files, broken invariants, out-of-range arguments.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Valid input on which the requested statistic cannot be computed
/// (e.g. a barrier the series never crosses).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace invstat

#endif
