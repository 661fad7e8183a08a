#ifndef OSCILSWARM_OPTIMIZER_HPP
#define OSCILSWARM_OPTIMIZER_HPP

#include "oscilswarm/core.hpp"
#include "oscilswarm/de.hpp"
#include "oscilswarm/hopso.hpp"
#include "oscilswarm/pso.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace oscilswarm {

using OptimizerConfig = std::variant<hopso::Config, pso::Config, de::Config>;

/// "hopso", "pso" or "de".
std::string optimizer_name(const OptimizerConfig& config);

/// Default configuration for a named optimizer. Throws UnknownOptimizer.
OptimizerConfig make_optimizer(std::string_view name);

/// Sets one tunable by key. Keys per optimizer:
///   hopso: c1 c2 omega lambda s m t-ul particles
///   pso:   chi c1 c2 particles
///   de:    pop f f-lo f-hi cr
/// Setting lambda clears s and vice versa. Throws UnknownParameter or
/// InvalidArgument.
void set_parameter(OptimizerConfig& config, std::string_view key, double value);

std::string describe(const OptimizerConfig& config);

/// Population consumed by one sweep for the given problem size and budget.
std::size_t population_size(const OptimizerConfig& config, std::size_t dimension,
                            std::uint64_t budget);

/// Seeded run of any optimizer. Deterministic in all arguments. Throws
/// BudgetTooSmall when the budget cannot cover one sweep.
RunRecord run_optimizer(const OptimizerConfig& config, const ObjectiveSpec& spec,
                        std::uint64_t budget, std::uint64_t seed);

} // namespace oscilswarm

#endif
