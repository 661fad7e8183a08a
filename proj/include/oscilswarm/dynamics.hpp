#ifndef OSCILSWARM_DYNAMICS_HPP
#define OSCILSWARM_DYNAMICS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

namespace oscilswarm::dynamics {

/// Per-dimension PSO iteration map acting on (velocity, shifted position):
///   [[chi, chi*phi], [-chi, 1 - chi*phi]]
struct DynamicalMatrix {
    double chi = 0.0;
    double phi = 0.0;
    std::array<std::array<double, 2>, 2> m{};

    double determinant() const;
};

/// Velocity and position relative to the weighted best-position blend.
struct TrajectoryState {
    double v = 0.0;
    double y = 0.0;

    double norm() const;
};

DynamicalMatrix build_matrix(double chi, double c1, double c2, double r1, double r2);

/// Matrix for an already combined phi = c1 r1 + c2 r2.
DynamicalMatrix matrix_for_phi(double chi, double phi);

TrajectoryState apply(const DynamicalMatrix& matrix, const TrajectoryState& state);

using EigenPair = std::pair<std::complex<double>, std::complex<double>>;

/// 1/2 (1 + (1 - phi) chi +- sqrt(((phi - 1) chi - 1)^2 - 4 chi)); the '+'
/// root comes first.
EigenPair eigenvalues_closed_form(double chi, double phi);

/// True iff both eigenvalue moduli are strictly below one.
bool convergence_check(double chi, double phi);

/// Singular values (largest first) of the matrix for c1 = c2 = c and
/// r1 + r2 = r, computed from the eigenvalues of M^T M built entrywise.
std::pair<double, double> singular_values(double chi, double c, double r);

/// Same quantity through the trace/determinant closed form
///   sigma^2 = 1/2 (T +- sqrt(T^2 - 4 chi^2)),
///   T = 2 chi^2 ((c r)^2 + 1) - 2 c r chi + 1.
std::pair<double, double> singular_values_closed_form(double chi, double c, double r);

/// Norm of (v, y) after each of `steps` applications of freshly drawn
/// matrices, starting from (1, 1). Throws invalid_argument for steps == 0.
std::vector<double> random_product_trajectory(double chi, double c1, double c2,
                                              std::size_t steps, std::uint64_t seed);

struct SweepRow {
    double r = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
};

/// `samples` evenly spaced values of r on [0, 2], endpoints included.
/// Throws invalid_argument for samples < 2.
std::vector<SweepRow> figure2_sweep(double chi, double c, std::size_t samples = 200);

/// CSV with header "r,sigma1,sigma2".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// CSV with header "step,norm"; steps are 1-based.
void write_trajectory_csv(std::ostream& out, const std::vector<double>& norms);

} // namespace oscilswarm::dynamics

#endif
