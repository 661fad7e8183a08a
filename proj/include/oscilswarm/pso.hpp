#ifndef OSCILSWARM_PSO_HPP
#define OSCILSWARM_PSO_HPP

#include "oscilswarm/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oscilswarm::pso {

/// Constricted global-best PSO. No velocity clamping.
struct Config {
    double chi = 0.7298;
    double c1 = 2.05;
    double c2 = 2.05;
    std::size_t particles = 20;

    bool operator==(const Config&) const = default;
};

void validate(const Config& config);
std::string describe(const Config& config);

/// chi * (v + c1 r1 (p - x) + c2 r2 (g - x))
double velocity_update(double v, double x, double p, double g, double chi, double c1, double c2,
                       double r1, double r2);

double position_update(double x, double v_next);

/// 2 / |2 - phi - sqrt(phi^2 - 4 phi)| with phi = c1 + c2. Throws InvalidPhi
/// when phi <= 4.
double constriction_factor(double c1, double c2);

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_value = 0.0;
};

class Swarm {
public:
    /// Random initialization; consumes `config.particles` evaluations.
    Swarm(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed, BudgetMeter& meter);
    Swarm(const Config& config, const ObjectiveSpec& spec, std::uint64_t seed,
          std::vector<Particle> particles);

    /// One synchronous iteration. r1 and r2 are drawn per particle and
    /// dimension.
    void step(BudgetMeter& meter);

    const std::vector<Particle>& particles() const { return particles_; }
    const std::vector<double>& global_best_position() const { return global_best_; }
    double global_best_value() const { return global_best_value_; }

private:
    void select_global_best();

    Config config_;
    const ObjectiveSpec* spec_;
    std::vector<RngStream> streams_;
    std::vector<Particle> particles_;
    std::vector<double> global_best_;
    double global_best_value_ = 0.0;
};

RunRecord run(const Config& config, const ObjectiveSpec& spec, std::uint64_t budget,
              std::uint64_t seed);

} // namespace oscilswarm::pso

#endif
