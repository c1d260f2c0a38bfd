#pragma once

#include <stdexcept>
#include <string>

namespace expander {

// Violated input contract (bad parameters, malformed files, failed admission
// checks). The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative eigensolver failed to converge within its iteration cap. Carries
// the best estimate so callers can still report it. CLI exit code 3.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double best_lambda, double best_residual)
        : std::runtime_error(what), lambda(best_lambda), residual(best_residual) {}
    double lambda;
    double residual;
};

// A self-check that can only fail if the implementation is wrong (count
// mismatches, disconnected Cayley graphs, broken bijections).
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace expander
