#ifndef RESARRAY_ERRORS_HPP
#define RESARRAY_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace resarray {

// Bad arguments to a model/spectra/dynamics routine (out-of-range site,
// violated precondition, singular parameter choice).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical routine failed to meet its contract (eigensolver residual,
// integrator breakdown, near-singular linear solve).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration document rejected; carries every issue found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& e : v) s += "\n  " + e;
        return s;
    }
    std::vector<std::string> issues_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace resarray

#endif
