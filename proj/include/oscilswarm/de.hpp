#ifndef OSCILSWARM_DE_HPP
#define OSCILSWARM_DE_HPP

#include "oscilswarm/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oscilswarm::de {

/// Differential evolution, rand/1/bin with synchronous generations.
struct Config {
    /// Unset means budget-aware default, see resolve_population.
    std::optional<std::size_t> population;
    /// Mutation factor drawn once per generation from [f_lo, f_hi); a fixed
    /// factor has f_lo == f_hi.
    double f_lo = 0.5;
    double f_hi = 1.0;
    double crossover = 0.7;

    bool operator==(const Config&) const = default;
};

void validate(const Config& config);
std::string describe(const Config& config);

/// Explicit population if set, else 15 * dimension capped so that at least
/// 100 generations fit in the budget, never below 4.
std::size_t resolve_population(const Config& config, std::size_t dimension, std::uint64_t budget);

/// Three pairwise-distinct indices in [0, n), all different from `target`.
/// Throws PopulationTooSmall when n < 4.
std::array<std::size_t, 3> pick_donors(RngStream& rng, std::size_t n, std::size_t target);

/// base + f * (plus - minus), elementwise.
std::vector<double> mutant(std::span<const double> base, std::span<const double> plus,
                           std::span<const double> minus, double f);

/// Binomial crossover: each coordinate comes from the mutant with probability
/// `crossover`; coordinate `forced` always does.
std::vector<double> binomial_crossover(std::span<const double> target,
                                       std::span<const double> mutant, double crossover,
                                       std::size_t forced, RngStream& rng);

class Population {
public:
    /// Uniform initialization in the init box; consumes `size` evaluations.
    Population(const Config& config, const ObjectiveSpec& spec, std::size_t size,
               std::uint64_t seed, BudgetMeter& meter);
    Population(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed,
               std::vector<std::vector<double>> members, std::vector<double> values);

    /// One generation. Trials are built from the current generation, then each
    /// slot keeps the better of target and trial.
    void step(BudgetMeter& meter);

    const std::vector<std::vector<double>>& members() const { return members_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t best_index() const;
    double last_mutation_factor() const { return last_f_; }

private:
    Config config_;
    const ObjectiveSpec* spec_;
    RngStream rng_;
    std::vector<std::vector<double>> members_;
    std::vector<double> values_;
    double last_f_ = 0.0;
};

RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed);

} // namespace oscilswarm::de

#endif
