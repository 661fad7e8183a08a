#ifndef OSCILSWARM_ERROR_HPP
#define OSCILSWARM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace oscilswarm {

/// Failure categories shared by every module. Values are mirrored one-to-one
/// by the C API status codes.
enum class ErrorCode {
    invalid_argument = 1,
    unknown_function,
    unknown_optimizer,
    unknown_parameter,
    dimension_mismatch,
    fixed_dimension,
    invalid_interval,
    budget_exhausted,
    budget_too_small,
    invalid_budget,
    degenerate_weights,
    invalid_phi,
    population_too_small,
    empty_input,
    parse_error,
    schema_mismatch,
    io_error,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Thrown by checked_evaluate once the evaluation budget is spent.
class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(const std::string& what)
        : Error(ErrorCode::budget_exhausted, what) {}
};

} // namespace oscilswarm

#endif
