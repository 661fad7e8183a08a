#include "oscilswarm/hopso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oscilswarm::hopso {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require(bool ok, const char* message)
{
    if (!ok)
        throw Error(ErrorCode::invalid_argument, message);
}

} // namespace

void validate(const Config& config)
{
    require(std::isfinite(config.c1) && std::isfinite(config.c2), "hopso: c1 and c2 must be finite");
    if (config.c1 + config.c2 == 0.0)
        throw Error(ErrorCode::degenerate_weights, "hopso: c1 + c2 must be non-zero");
    require(config.omega > 0.0 && std::isfinite(config.omega), "hopso: omega must be positive");
    require(config.damping.has_value() != config.scaling.has_value(),
            "hopso: exactly one of lambda and s must be set");
    if (config.damping)
        require(*config.damping >= 0.0 && std::isfinite(*config.damping),
                "hopso: lambda must be non-negative");
    if (config.scaling)
        require(*config.scaling > 0.0 && std::isfinite(*config.scaling),
                "hopso: s must be positive");
    require(config.floor_multiplier >= 0.0 && std::isfinite(config.floor_multiplier),
            "hopso: m must be non-negative");
    require(config.time_upper > 0.0 && std::isfinite(config.time_upper),
            "hopso: t_ul must be positive");
    require(config.particles >= 1, "hopso: at least one particle is required");
}

double resolve_damping(const Config& config, std::uint64_t budget)
{
    validate(config);
    if (config.damping)
        return *config.damping;
    return derive_lambda(*config.scaling, budget, config.particles);
}

std::string describe(const Config& config)
{
    std::string out = "c1=" + format_number(config.c1) + " c2=" + format_number(config.c2) +
                      " omega=" + format_number(config.omega);
    if (config.damping)
        out += " lambda=" + format_number(*config.damping);
    if (config.scaling)
        out += " s=" + format_number(*config.scaling);
    out += " m=" + format_number(config.floor_multiplier) +
           " t_ul=" + format_number(config.time_upper) +
           " particles=" + std::to_string(config.particles);
    return out;
}

double attractor(double personal_best, double global_best, double c1, double c2)
{
    const double total = c1 + c2;
    if (total == 0.0)
        throw Error(ErrorCode::degenerate_weights, "attractor weights sum to zero");
    return (c1 * personal_best + c2 * global_best) / total;
}

double initial_amplitude(double x0, double v0, double attractor, double damping, double omega)
{
    const double offset = x0 - attractor;
    const double kinetic = (v0 + damping * offset) / omega;
    return std::hypot(offset, kinetic);
}

double initial_phase(double x0, double v0, double attractor, double amplitude, double damping,
                     double omega)
{
    if (amplitude == 0.0)
        return 0.0;
    const double offset = x0 - attractor;
    const double sine_term = -(v0 + damping * offset) / omega;
    // arccos keeps x(0) = x0 even when the amplitude was raised above the
    // value implied by (x0, v0); the velocity only picks the branch.
    double theta = std::acos(std::clamp(offset / amplitude, -1.0, 1.0));
    if (sine_term < 0.0)
        theta = two_pi - theta;
    if (theta >= two_pi)
        theta = 0.0;
    return theta + 0.0;
}

double amplitude_floor(double personal_best, double global_best, double multiplier)
{
    return multiplier * std::abs(personal_best - global_best) / 2.0;
}

double effective_amplitude(double amplitude, double damping, double clock, double floor)
{
    return std::max(amplitude * std::exp(-damping * clock), floor);
}

void sample(OscillatorState& state, double dt, double damping, double omega, double floor)
{
    state.clock += dt;
    const double amp = effective_amplitude(state.amplitude, damping, state.clock, floor);
    const double angle = omega * state.clock + state.phase;
    const double offset = amp * std::cos(angle);
    state.effective_amplitude = amp;
    state.position = offset + state.attractor;
    state.velocity = -omega * amp * std::sin(angle) - damping * offset;
}

OscillatorState rebase_on_update(const OscillatorState& state, double x_now, double v_now,
                                 double new_attractor, double damping, double omega,
                                 double floor)
{
    const double candidate = initial_amplitude(x_now, v_now, new_attractor, damping, omega);
    const double amp = std::max({state.effective_amplitude, candidate, floor});

    OscillatorState next;
    next.attractor = new_attractor;
    next.amplitude = amp;
    next.phase = initial_phase(x_now, v_now, new_attractor, amp, damping, omega);
    next.clock = 0.0;
    next.position = x_now;
    next.velocity = v_now;
    next.effective_amplitude = amp;
    return next;
}

double derive_lambda(double scaling, std::uint64_t budget, std::size_t particles)
{
    if (!(scaling > 0.0))
        throw Error(ErrorCode::invalid_argument, "scaling factor must be positive");
    if (particles == 0 || budget < particles)
        throw Error(ErrorCode::invalid_budget,
                    "budget " + std::to_string(budget) + " is smaller than the " +
                        std::to_string(particles) + " particles");
    return scaling * static_cast<double>(particles) / static_cast<double>(budget);
}

Swarm::Swarm(const Config& config, const ObjectiveSpec& spec, double damping, std::uint64_t seed,
             BudgetMeter& meter, Observer* observer)
    : config_(config), spec_(&spec), damping_(damping), observer_(observer)
{
    validate(config_);
    oscilswarm::validate(spec);
    const std::size_t n = config_.particles;
    const std::size_t dim = spec.dimension;
    if (!meter.can_afford(n))
        throw Error(ErrorCode::budget_too_small,
                    "budget cannot cover the initial sweep of " + std::to_string(n) + " particles");

    const RngStream master(seed);
    streams_.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        streams_.push_back(master.split(j));

    particles_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        particle.oscillators.resize(dim);
        particle.best_position.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const Interval box = spec.init_box[d];
            const double half = box.width() / 2.0;
            auto& osc = particle.oscillators[d];
            osc.position = uniform_in(streams_[j], box.lo, box.hi);
            osc.velocity = uniform_in(streams_[j], -half, half);
            particle.best_position[d] = osc.position;
        }
    }
    for (auto& particle : particles_)
        particle.best_value = checked_evaluate(spec, particle.best_position, meter);

    select_global_best();
    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        for (std::size_t d = 0; d < dim; ++d) {
            auto& osc = particle.oscillators[d];
            osc.attractor = attractor(particle.best_position[d], global_best_[d], config_.c1,
                                      config_.c2);
            osc.amplitude =
                initial_amplitude(osc.position, osc.velocity, osc.attractor, damping_, config_.omega);
            osc.phase = initial_phase(osc.position, osc.velocity, osc.attractor, osc.amplitude,
                                      damping_, config_.omega);
            osc.clock = 0.0;
            const double floor = amplitude_floor(particle.best_position[d], global_best_[d],
                                                 config_.floor_multiplier);
            osc.effective_amplitude = std::max(osc.amplitude, floor);
        }
    }
    scratch_.resize(dim);
}

Swarm::Swarm(const Config& config, const ObjectiveSpec& spec, double damping, std::uint64_t seed,
             std::vector<Particle> particles, Observer* observer)
    : config_(config), spec_(&spec), damping_(damping), observer_(observer),
      particles_(std::move(particles))
{
    validate(config_);
    oscilswarm::validate(spec);
    require(!particles_.empty(), "hopso: swarm needs at least one particle");
    config_.particles = particles_.size();
    for (const auto& particle : particles_) {
        require(particle.oscillators.size() == spec.dimension &&
                    particle.best_position.size() == spec.dimension,
                "hopso: particle state does not match the objective dimension");
    }
    const RngStream master(seed);
    for (std::size_t j = 0; j < particles_.size(); ++j)
        streams_.push_back(master.split(j));
    select_global_best();
    scratch_.resize(spec.dimension);
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

void Swarm::rebase_particle(std::size_t j)
{
    auto& particle = particles_[j];
    for (std::size_t d = 0; d < particle.oscillators.size(); ++d) {
        auto& osc = particle.oscillators[d];
        const double p = particle.best_position[d];
        const double a = attractor(p, global_best_[d], config_.c1, config_.c2);
        const double floor = amplitude_floor(p, global_best_[d], config_.floor_multiplier);
        OscillatorState next = rebase_on_update(osc, osc.position, osc.velocity, a, damping_,
                                                config_.omega, floor);
        if (observer_)
            observer_->on_rebase(j, d, osc, next, floor);
        osc = next;
    }
}

void Swarm::step(BudgetMeter& meter)
{
    const std::size_t n = particles_.size();
    if (!meter.can_afford(n))
        throw BudgetExhausted("remaining budget cannot cover a full sweep");

    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        for (std::size_t d = 0; d < particle.oscillators.size(); ++d) {
            auto& osc = particle.oscillators[d];
            const double floor = amplitude_floor(particle.best_position[d], global_best_[d],
                                                 config_.floor_multiplier);
            const double dt = streams_[j].uniform(0.0, config_.time_upper);
            sample(osc, dt, damping_, config_.omega, floor);
            if (observer_)
                observer_->on_sample(j, d, osc, floor);
        }
    }

    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& osc = particles_[j].oscillators;
        for (std::size_t d = 0; d < osc.size(); ++d)
            scratch_[d] = osc[d].position;
        values[j] = checked_evaluate(*spec_, scratch_, meter);
    }

    for (std::size_t j = 0; j < n; ++j) {
        auto& particle = particles_[j];
        if (!(values[j] < particle.best_value))
            continue;
        particle.best_value = values[j];
        for (std::size_t d = 0; d < particle.oscillators.size(); ++d)
            particle.best_position[d] = particle.oscillators[d].position;
        rebase_particle(j);
    }

    const double previous = global_best_value_;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (particles_[j].best_value < previous &&
            (best == n || particles_[j].best_value < particles_[best].best_value))
            best = j;
    }
    if (best == n)
        return;
    global_best_ = particles_[best].best_position;
    global_best_value_ = particles_[best].best_value;
    for (std::size_t j = 0; j < n; ++j)
        rebase_particle(j);
}

RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed, Observer* observer)
{
    validate(config);
    if (budget < config.particles)
        throw Error(ErrorCode::budget_too_small,
                    "budget " + std::to_string(budget) + " is smaller than the population of " +
                        std::to_string(config.particles));
    const double damping = resolve_damping(config, budget);

    BudgetMeter meter(budget);
    Swarm swarm(config, spec, damping, seed, meter, observer);

    RunRecord record;
    record.optimizer = "hopso";
    record.objective = spec.name;
    record.seed = seed;
    record.budget = budget;
    record.config = describe(config) + " lambda_eff=" + format_number(damping);
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

} // namespace oscilswarm::hopso
