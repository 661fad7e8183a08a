#include "oscilswarm/pso.hpp"

#include <cmath>
#include <string>

namespace oscilswarm::pso {

void validate(const Config& config)
{
    if (!std::isfinite(config.chi) || !std::isfinite(config.c1) || !std::isfinite(config.c2))
        throw Error(ErrorCode::invalid_argument, "pso: chi, c1 and c2 must be finite");
    if (config.particles < 1)
        throw Error(ErrorCode::invalid_argument, "pso: at least one particle is required");
}

std::string describe(const Config& config)
{
    return "chi=" + format_number(config.chi) + " c1=" + format_number(config.c1) +
           " c2=" + format_number(config.c2) + " particles=" + std::to_string(config.particles);
}

double velocity_update(double v, double x, double p, double g, double chi, double c1, double c2,
                       double r1, double r2)
{
    return chi * (v + c1 * r1 * (p - x) + c2 * r2 * (g - x));
}

double position_update(double x, double v_next)
{
    return x + v_next;
}

double constriction_factor(double c1, double c2)
{
    const double phi = c1 + c2;
    if (!(phi > 4.0))
        throw Error(ErrorCode::invalid_phi,
                    "constriction factor needs c1 + c2 > 4, got " + format_number(phi));
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

Swarm::Swarm(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed,
             BudgetMeter& meter)
    : config_(config), spec_(&spec)
{
    validate(config_);
    oscilswarm::validate(spec);
    const std::size_t n = config_.particles;
    if (!meter.can_afford(n))
        throw Error(ErrorCode::budget_too_small,
                    "budget cannot cover the initial sweep of " + std::to_string(n) + " particles");

    const RngStream master(seed);
    for (std::size_t j = 0; j < n; ++j)
        streams_.push_back(master.split(j));

    particles_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        particle.position.resize(spec.dimension);
        particle.velocity.resize(spec.dimension);
        for (std::size_t d = 0; d < spec.dimension; ++d) {
            const Interval box = spec.init_box[d];
            const double half = box.width() / 2.0;
            particle.position[d] = uniform_in(streams_[j], box.lo, box.hi);
            particle.velocity[d] = uniform_in(streams_[j], -half, half);
        }
        particle.best_position = particle.position;
    }
    for (auto& particle : particles_)
        particle.best_value = checked_evaluate(spec, particle.position, meter);
    select_global_best();
}

Swarm::Swarm(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed,
             std::vector<Particle> particles)
    : config_(config), spec_(&spec), particles_(std::move(particles))
{
    validate(config_);
    oscilswarm::validate(spec);
    if (particles_.empty())
        throw Error(ErrorCode::invalid_argument, "pso: swarm needs at least one particle");
    config_.particles = particles_.size();
    for (const auto& particle : particles_) {
        if (particle.position.size() != spec.dimension ||
            particle.velocity.size() != spec.dimension ||
            particle.best_position.size() != spec.dimension)
            throw Error(ErrorCode::invalid_argument,
                        "pso: particle state does not match the objective dimension");
    }
    const RngStream master(seed);
    for (std::size_t j = 0; j < particles_.size(); ++j)
        streams_.push_back(master.split(j));
    select_global_best();
}

void Swarm::select_global_best()
{
    std::size_t best = 0;
    for (std::size_t j = 1; j < particles_.size(); ++j) {
        if (particles_[j].best_value < particles_[best].best_value)
            best = j;
    }
    global_best_ = particles_[best].best_position;
    global_best_value_ = particles_[best].best_value;
}

void Swarm::step(BudgetMeter& meter)
{
    const std::size_t n = particles_.size();
    if (!meter.can_afford(n))
        throw BudgetExhausted("remaining budget cannot cover a full sweep");

    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        for (std::size_t d = 0; d < particle.position.size(); ++d) {
            const double r1 = streams_[j].uniform01();
            const double r2 = streams_[j].uniform01();
            const double v = velocity_update(particle.velocity[d], particle.position[d],
                                             particle.best_position[d], global_best_[d],
                                             config_.chi, config_.c1, config_.c2, r1, r2);
            particle.velocity[d] = v;
            particle.position[d] = position_update(particle.position[d], v);
        }
    }

    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j)
        values[j] = checked_evaluate(*spec_, particles_[j].position, meter);

    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        if (values[j] < particle.best_value) {
            particle.best_value = values[j];
            particle.best_position = particle.position;
        }
    }
    for (const auto& particle : particles_) {
        if (particle.best_value < global_best_value_) {
            global_best_value_ = particle.best_value;
            global_best_ = particle.best_position;
        }
    }
}

RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed)
{
    validate(config);
    if (budget < config.particles)
        throw Error(ErrorCode::budget_too_small,
                    "budget " + std::to_string(budget) + " is smaller than the population of " +
                        std::to_string(config.particles));
    BudgetMeter meter(budget);
    Swarm swarm(config, spec, seed, meter);

    RunRecord record;
    record.optimizer = "pso";
    record.objective = spec.name;
    record.seed = seed;
    record.budget = budget;
    record.config = describe(config);
    record_progress(record, meter.used(), swarm.global_best_value());

    while (meter.can_afford(swarm.particles().size())) {
        swarm.step(meter);
        record_progress(record, meter.used(), swarm.global_best_value());
    }

    record.best_position = swarm.global_best_position();
    record.best_value = swarm.global_best_value();
    record.evaluations_used = meter.used();
    return record;
}

} // namespace oscilswarm::pso
