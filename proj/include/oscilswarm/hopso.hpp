#ifndef OSCILSWARM_HOPSO_HPP
#define OSCILSWARM_HOPSO_HPP

#include "oscilswarm/core.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace oscilswarm::hopso {

/// Tunables of the harmonic-oscillator swarm. The damping rate is given
/// either directly or through a scaling factor s, in which case
/// damping = s * particles / budget.
struct Config {
    double c1 = 1.0;
    double c2 = 1.0;
    double omega = 1.0;
    std::optional<double> damping;
    std::optional<double> scaling = 10.0;
    /// Amplitude floor multiplier m.
    double floor_multiplier = 2.05;
    /// Upper limit of the random clock advance per sample.
    double time_upper = 2.0 * std::numbers::pi;
    std::size_t particles = 20;

    bool operator==(const Config&) const = default;
};

/// Throws invalid_argument on out-of-range tunables or when both or neither
/// of damping/scaling are set.
void validate(const Config& config);

/// Damping rate for a run with the given budget.
double resolve_damping(const Config& config, std::uint64_t budget);

/// "key=value ..." rendering used in run records.
std::string describe(const Config& config);

/// Per-particle, per-dimension oscillator.
struct OscillatorState {
    double attractor = 0.0;
    /// Base amplitude at clock zero.
    double amplitude = 0.0;
    double phase = 0.0;
    double clock = 0.0;
    double position = 0.0;
    double velocity = 0.0;
    /// Amplitude in force at the last sample or rebase.
    double effective_amplitude = 0.0;
};

/// Weighted blend of personal and global best. Throws DegenerateWeights when
/// c1 + c2 == 0.
double attractor(double personal_best, double global_best, double c1, double c2);

double initial_amplitude(double x0, double v0, double attractor, double damping, double omega);

/// Phase in [0, 2*pi) with amplitude * cos(phase) = x0 - attractor; the sign
/// of the velocity term picks the branch. When `amplitude` is the value
/// initial_amplitude gives, the velocity is reproduced as well. Returns 0 for
/// a zero amplitude.
double initial_phase(double x0, double v0, double attractor, double amplitude, double damping,
                     double omega);

/// m * |p - g| / 2.
double amplitude_floor(double personal_best, double global_best, double multiplier);

double effective_amplitude(double amplitude, double damping, double clock, double floor);

/// Advances the clock by dt and moves the oscillator to the new sample.
void sample(OscillatorState& state, double dt, double damping, double omega, double floor);

/// Resets the clock and re-derives amplitude and phase about a new attractor
/// from the current position and velocity. The new amplitude never falls
/// below the amplitude in force before the reset nor below the floor.
OscillatorState rebase_on_update(const OscillatorState& state, double x_now, double v_now,
                                 double new_attractor, double damping, double omega,
                                 double floor);

/// s * N / B. Throws InvalidBudget when B < N.
double derive_lambda(double scaling, std::uint64_t budget, std::size_t particles);

/// Hooks for inspecting every sample and rebase of a running swarm.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void on_sample(std::size_t /*particle*/, std::size_t /*dim*/,
                           const OscillatorState& /*state*/, double /*floor*/) {}
    virtual void on_rebase(std::size_t /*particle*/, std::size_t /*dim*/,
                           const OscillatorState& /*before*/, const OscillatorState& /*after*/,
                           double /*floor*/) {}
};

struct Particle {
    std::vector<OscillatorState> oscillators;
    std::vector<double> best_position;
    double best_value = 0.0;
};

class Swarm {
public:
    /// Random initialization; consumes `config.particles` evaluations.
    Swarm(const Config& config, const ObjectiveSpec& spec, double damping, std::uint64_t seed,
          BudgetMeter& meter, Observer* observer = nullptr);

    /// Starts from explicit particles. Attractors and amplitudes are taken as
    /// given; the global best is the best personal best.
    Swarm(const Config& config, const ObjectiveSpec& spec, double damping, std::uint64_t seed,
          std::vector<Particle> particles, Observer* observer = nullptr);

    /// One synchronous sweep: sample, evaluate, update bests and rebase.
    void step(BudgetMeter& meter);

    const std::vector<Particle>& particles() const { return particles_; }
    const std::vector<double>& global_best_position() const { return global_best_; }
    double global_best_value() const { return global_best_value_; }
    double damping() const { return damping_; }

private:
    void rebase_particle(std::size_t j);
    void select_global_best();

    Config config_;
    const ObjectiveSpec* spec_;
    double damping_;
    Observer* observer_;
    std::vector<RngStream> streams_;
    std::vector<Particle> particles_;
    std::vector<double> global_best_;
    double global_best_value_ = 0.0;
    std::vector<double> scratch_;
};

/// Complete seeded run. Throws BudgetTooSmall when budget < particles.
RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed, Observer* observer = nullptr);

} // namespace oscilswarm::hopso

#endif
