#include "oscilswarm/optimizer.hpp"

#include <cmath>
#include <string>

namespace oscilswarm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t as_count(std::string_view key, double value)
{
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e9)
        throw Error(ErrorCode::invalid_argument,
                    "parameter '" + std::string(key) + "' must be a positive integer");
    return static_cast<std::size_t>(value);
}

[[noreturn]] void unknown(std::string_view optimizer, std::string_view key)
{
    throw Error(ErrorCode::unknown_parameter, "optimizer '" + std::string(optimizer) +
                                                  "' has no parameter '" + std::string(key) + "'");
}

} // namespace

std::string optimizer_name(const OptimizerConfig& config)
{
    return std::visit(overloaded{[](const hopso::Config&) { return std::string("hopso"); },
                                 [](const pso::Config&) { return std::string("pso"); },
                                 [](const de::Config&) { return std::string("de"); }},
                      config);
}

OptimizerConfig make_optimizer(std::string_view name)
{
    if (name == "hopso")
        return hopso::Config{};
    if (name == "pso")
        return pso::Config{};
    if (name == "de")
        return de::Config{};
    throw Error(ErrorCode::unknown_optimizer, "unknown optimizer '" + std::string(name) + "'");
}

void set_parameter(OptimizerConfig& config, std::string_view key, double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorCode::invalid_argument,
                    "parameter '" + std::string(key) + "' must be finite");
    std::visit(overloaded{
                   [&](hopso::Config& c) {
                       if (key == "c1") c.c1 = value;
                       else if (key == "c2") c.c2 = value;
                       else if (key == "omega") c.omega = value;
                       else if (key == "lambda") { c.damping = value; c.scaling.reset(); }
                       else if (key == "s") { c.scaling = value; c.damping.reset(); }
                       else if (key == "m") c.floor_multiplier = value;
                       else if (key == "t-ul") c.time_upper = value;
                       else if (key == "particles") c.particles = as_count(key, value);
                       else unknown("hopso", key);
                       hopso::validate(c);
                   },
                   [&](pso::Config& c) {
                       if (key == "chi") c.chi = value;
                       else if (key == "c1") c.c1 = value;
                       else if (key == "c2") c.c2 = value;
                       else if (key == "particles") c.particles = as_count(key, value);
                       else unknown("pso", key);
                       pso::validate(c);
                   },
                   [&](de::Config& c) {
                       if (key == "pop") c.population = as_count(key, value);
                       else if (key == "f") { c.f_lo = value; c.f_hi = value; }
                       else if (key == "f-lo") c.f_lo = value;
                       else if (key == "f-hi") c.f_hi = value;
                       else if (key == "cr") c.crossover = value;
                       else unknown("de", key);
                       de::validate(c);
                   }},
               config);
}

std::string describe(const OptimizerConfig& config)
{
    return std::visit(overloaded{[](const hopso::Config& c) { return hopso::describe(c); },
                                 [](const pso::Config& c) { return pso::describe(c); },
                                 [](const de::Config& c) { return de::describe(c); }},
                      config);
}

std::size_t population_size(const OptimizerConfig& config, std::size_t dimension,
                            std::uint64_t budget)
{
    return std::visit(
        overloaded{[](const hopso::Config& c) { return c.particles; },
                   [](const pso::Config& c) { return c.particles; },
                   [&](const de::Config& c) { return de::resolve_population(c, dimension, budget); }},
        config);
}

RunRecord run_optimizer(const OptimizerConfig& config, const ObjectiveSpec& spec,
                        std::uint64_t budget, std::uint64_t seed)
{
    validate(spec);
    const std::size_t population = population_size(config, spec.dimension, budget);
    if (budget < population)
        throw Error(ErrorCode::budget_too_small,
                    "budget " + std::to_string(budget) + " is smaller than the population of " +
                        std::to_string(population));
    return std::visit(
        overloaded{[&](const hopso::Config& c) { return hopso::run(c, spec, budget, seed); },
                   [&](const pso::Config& c) { return pso::run(c, spec, budget, seed); },
                   [&](const de::Config& c) { return de::run(c, spec, budget, seed); }},
        config);
}

} // namespace oscilswarm
