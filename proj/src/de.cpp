#include "oscilswarm/de.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oscilswarm::de {

namespace {

constexpr std::size_t members_per_dimension = 15;
constexpr std::uint64_t min_generations = 100;
constexpr std::size_t min_population = 4;

} // namespace

void validate(const Config& config)
{
    if (config.population && *config.population < min_population)
        throw Error(ErrorCode::population_too_small,
                    "de: population must be at least 4 for rand/1 mutation");
    if (!std::isfinite(config.f_lo) || !std::isfinite(config.f_hi) || config.f_lo < 0.0 ||
        config.f_hi < config.f_lo)
        throw Error(ErrorCode::invalid_argument, "de: mutation range must satisfy 0 <= lo <= hi");
    if (!(config.crossover >= 0.0 && config.crossover <= 1.0))
        throw Error(ErrorCode::invalid_argument, "de: crossover rate must lie in [0, 1]");
}

std::string describe(const Config& config)
{
    std::string out = "population=";
    out += config.population ? std::to_string(*config.population) : std::string("auto");
    if (config.f_lo == config.f_hi)
        out += " f=" + format_number(config.f_lo);
    else
        out += " f=[" + format_number(config.f_lo) + "," + format_number(config.f_hi) + ")";
    out += " cr=" + format_number(config.crossover);
    return out;
}

std::size_t resolve_population(const Config& config, std::size_t dimension, std::uint64_t budget)
{
    if (config.population)
        return *config.population;
    const std::size_t wanted = members_per_dimension * dimension;
    const auto cap = static_cast<std::size_t>(budget / min_generations);
    return std::max(min_population, std::min(wanted, cap));
}

std::array<std::size_t, 3> pick_donors(RngStream& rng, std::size_t n, std::size_t target)
{
    if (n < min_population)
        throw Error(ErrorCode::population_too_small,
                    "rand/1 mutation needs at least 4 members, got " + std::to_string(n));
    std::array<std::size_t, 3> picks{};
    std::size_t count = 0;
    while (count < 3) {
        const std::size_t k = rng.index(n);
        if (k == target || std::find(picks.begin(), picks.begin() + count, k) != picks.begin() + count)
            continue;
        picks[count++] = k;
    }
    return picks;
}

std::vector<double> mutant(std::span<const double> base, std::span<const double> plus,
                           std::span<const double> minus, double f)
{
    std::vector<double> out(base.size());
    for (std::size_t d = 0; d < base.size(); ++d)
        out[d] = base[d] + f * (plus[d] - minus[d]);
    return out;
}

std::vector<double> binomial_crossover(std::span<const double> target,
                                       std::span<const double> mutant, double crossover,
                                       std::size_t forced, RngStream& rng)
{
    std::vector<double> trial(target.begin(), target.end());
    for (std::size_t d = 0; d < trial.size(); ++d) {
        if (d == forced || rng.uniform01() < crossover)
            trial[d] = mutant[d];
    }
    return trial;
}

Population::Population(const Config& config, const ObjectiveSpec& spec, std::size_t size,
                       std::uint64_t seed, BudgetMeter& meter)
    : config_(config), spec_(&spec), rng_(seed)
{
    validate(config_);
    oscilswarm::validate(spec);
    if (size < min_population)
        throw Error(ErrorCode::population_too_small,
                    "de: population must be at least 4, got " + std::to_string(size));
    if (!meter.can_afford(size))
        throw Error(ErrorCode::budget_too_small,
                    "budget cannot cover the initial population of " + std::to_string(size));

    members_.assign(size, std::vector<double>(spec.dimension));
    for (auto& member : members_) {
        for (std::size_t d = 0; d < spec.dimension; ++d)
            member[d] = uniform_in(rng_, spec.init_box[d].lo, spec.init_box[d].hi);
    }
    values_.resize(size);
    for (std::size_t i = 0; i < size; ++i)
        values_[i] = checked_evaluate(spec, members_[i], meter);
}

Population::Population(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed,
                       std::vector<std::vector<double>> members, std::vector<double> values)
    : config_(config), spec_(&spec), rng_(seed), members_(std::move(members)),
      values_(std::move(values))
{
    validate(config_);
    oscilswarm::validate(spec);
    if (members_.size() < min_population)
        throw Error(ErrorCode::population_too_small, "de: population must be at least 4");
    if (values_.size() != members_.size())
        throw Error(ErrorCode::invalid_argument, "de: one value per member is required");
    for (const auto& member : members_) {
        if (member.size() != spec.dimension)
            throw Error(ErrorCode::invalid_argument,
                        "de: member does not match the objective dimension");
    }
}

std::size_t Population::best_index() const
{
    return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) -
                                    values_.begin());
}

void Population::step(BudgetMeter& meter)
{
    const std::size_t n = members_.size();
    if (!meter.can_afford(n))
        throw BudgetExhausted("remaining budget cannot cover a full generation");

    last_f_ = config_.f_lo == config_.f_hi ? config_.f_lo : rng_.uniform(config_.f_lo, config_.f_hi);

    std::vector<std::vector<double>> trials(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto donors = pick_donors(rng_, n, i);
        const auto m = mutant(members_[donors[0]], members_[donors[1]], members_[donors[2]], last_f_);
        const std::size_t forced = rng_.index(spec_->dimension);
        trials[i] = binomial_crossover(members_[i], m, config_.crossover, forced, rng_);
    }

    std::vector<double> trial_values(n);
    for (std::size_t i = 0; i < n; ++i)
        trial_values[i] = checked_evaluate(*spec_, trials[i], meter);

    for (std::size_t i = 0; i < n; ++i) {
        if (trial_values[i] <= values_[i]) {
            members_[i] = std::move(trials[i]);
            values_[i] = trial_values[i];
        }
    }
}

RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed)
{
    validate(config);
    const std::size_t size = resolve_population(config, spec.dimension, budget);
    if (budget < size)
        throw Error(ErrorCode::budget_too_small,
                    "budget " + std::to_string(budget) + " is smaller than the population of " +
                        std::to_string(size));
    BudgetMeter meter(budget);
    Population population(config, spec, size, seed, meter);

    RunRecord record;
    record.optimizer = "de";
    record.objective = spec.name;
    record.seed = seed;
    record.budget = budget;
    record.config = describe(config) + " population_eff=" + std::to_string(size);

    auto best = [&] { return population.values()[population.best_index()]; };
    record_progress(record, meter.used(), best());
    while (meter.can_afford(size)) {
        population.step(meter);
        record_progress(record, meter.used(), best());
    }

    record.best_position = population.members()[population.best_index()];
    record.best_value = best();
    record.evaluations_used = meter.used();
    return record;
}

} // namespace oscilswarm::de
