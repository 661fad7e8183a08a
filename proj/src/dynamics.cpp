#include "oscilswarm/dynamics.hpp"

#include "oscilswarm/core.hpp"

#include <algorithm>
#include <cmath>

namespace oscilswarm::dynamics {

double DynamicalMatrix::determinant() const
{
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

double TrajectoryState::norm() const
{
    return std::hypot(v, y);
}

DynamicalMatrix build_matrix(double chi, double c1, double c2, double r1, double r2)
{
    return matrix_for_phi(chi, c1 * r1 + c2 * r2);
}

DynamicalMatrix matrix_for_phi(double chi, double phi)
{
    DynamicalMatrix out;
    out.chi = chi;
    out.phi = phi;
    out.m = {{{chi, chi * phi}, {-chi, 1.0 - chi * phi}}};
    return out;
}

TrajectoryState apply(const DynamicalMatrix& matrix, const TrajectoryState& state)
{
    const auto& m = matrix.m;
    return {m[0][0] * state.v + m[0][1] * state.y, m[1][0] * state.v + m[1][1] * state.y};
}

EigenPair eigenvalues_closed_form(double chi, double phi)
{
    const double trace = 1.0 + (1.0 - phi) * chi;
    const double shifted = (phi - 1.0) * chi - 1.0;
    const std::complex<double> root = std::sqrt(std::complex<double>(shifted * shifted - 4.0 * chi));
    return {0.5 * (trace + root), 0.5 * (trace - root)};
}

bool convergence_check(double chi, double phi)
{
    const auto [l1, l2] = eigenvalues_closed_form(chi, phi);
    return std::max(std::abs(l1), std::abs(l2)) < 1.0;
}

std::pair<double, double> singular_values(double chi, double c, double r)
{
    const auto m = build_matrix(chi, c, c, r / 2.0, r / 2.0).m;
    // Gram matrix M^T M = [[a, b], [b, d]]
    const double a = m[0][0] * m[0][0] + m[1][0] * m[1][0];
    const double b = m[0][0] * m[0][1] + m[1][0] * m[1][1];
    const double d = m[0][1] * m[0][1] + m[1][1] * m[1][1];
    const double mean = 0.5 * (a + d);
    const double spread = std::hypot(0.5 * (a - d), b);
    const double big = mean + spread;
    const double det = std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const double s1 = std::sqrt(big);
    // small eigenvalue via the determinant avoids cancellation
    const double s2 = s1 > 0.0 ? det / s1 : 0.0;
    return {s1, s2};
}

std::pair<double, double> singular_values_closed_form(double chi, double c, double r)
{
    const double phi = c * r;
    const double t = 2.0 * chi * chi * (phi * phi + 1.0) - 2.0 * phi * chi + 1.0;
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * chi * chi));
    const double big = 0.5 * (t + disc);
    const double small = 0.5 * (t - disc);
    return {std::sqrt(big), std::sqrt(std::max(0.0, small))};
}

std::vector<double> random_product_trajectory(double chi, double c1, double c2,
                                              std::size_t steps, std::uint64_t seed)
{
    if (steps == 0)
        throw Error(ErrorCode::invalid_argument, "trajectory needs at least one step");
    RngStream rng(seed);
    TrajectoryState state{1.0, 1.0};
    std::vector<double> norms;
    norms.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        state = apply(build_matrix(chi, c1, c2, r1, r2), state);
        norms.push_back(state.norm());
    }
    return norms;
}

std::vector<SweepRow> figure2_sweep(double chi, double c, std::size_t samples)
{
    if (samples < 2)
        throw Error(ErrorCode::invalid_argument, "sweep needs at least two samples");
    std::vector<SweepRow> rows;
    rows.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double r = 2.0 * static_cast<double>(k) / static_cast<double>(samples - 1);
        const auto [s1, s2] = singular_values(chi, c, r);
        rows.push_back({r, s1, s2});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "r,sigma1,sigma2\n";
    for (const auto& row : rows)
        out << format_number(row.r) << ',' << format_number(row.sigma1) << ','
            << format_number(row.sigma2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const std::vector<double>& norms)
{
    out << "step,norm\n";
    for (std::size_t i = 0; i < norms.size(); ++i)
        out << (i + 1) << ',' << format_number(norms[i]) << '\n';
}

} // namespace oscilswarm::dynamics
