#ifndef OSCILSWARM_TESTBED_HPP
#define OSCILSWARM_TESTBED_HPP

#include "oscilswarm/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oscilswarm::testbed {

// Raw functional forms. Callers are responsible for the dimension; the 2-D
// functions read only x[0] and x[1].
double ackley(std::span<const double> x);
double beale(std::span<const double> x);
double cross_in_tray(std::span<const double> x);
double drop_wave(std::span<const double> x);
double goldstein_price(std::span<const double> x);
double griewank(std::span<const double> x);
double levy(std::span<const double> x);
double michalewicz(std::span<const double> x);
double rastrigin(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double schwefel(std::span<const double> x);
double sphere(std::span<const double> x);

/// Static description of one registry entry.
struct FunctionInfo {
    std::string_view name;
    std::size_t default_dimension;
    bool fixed_dimension;
    Interval box;
    double f_min;
    /// Default budget used by the comparison table.
    std::uint64_t default_budget;
};

/// All registered functions, ordered by name.
std::span<const FunctionInfo> registry();

/// Throws UnknownFunction.
const FunctionInfo& info(std::string_view name);

bool is_registered(std::string_view name);

/// Builds the ObjectiveSpec for `name`. Passing a dimension is only allowed
/// for dimension-parametric functions (FixedDimension otherwise).
ObjectiveSpec spec_for(std::string_view name, std::optional<std::size_t> dimension = {});

/// Evaluates a registered function at its registered dimension. Throws
/// UnknownFunction or DimensionMismatch. Use spec_for for other dimensions.
double evaluate(std::string_view name, std::span<const double> x);

} // namespace oscilswarm::testbed

#endif
