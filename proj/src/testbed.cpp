#include "oscilswarm/testbed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace oscilswarm::testbed {

namespace {

constexpr double pi = std::numbers::pi;

constexpr double ackley_a = 20.0;
constexpr double ackley_b = 0.2;
constexpr double ackley_c = 2.0 * pi;
constexpr double michalewicz_m = 10.0;
constexpr double schwefel_offset = 418.9829;

constexpr std::array<FunctionInfo, 12> entries{{
    {"ackley", 10, false, {-32.76, 32.76}, 0.0, 10000},
    {"beale", 2, true, {-5.0, 5.0}, 0.0, 1000},
    {"cross-in-tray", 2, true, {-10.0, 10.0}, -2.06261, 10000},
    {"drop-wave", 2, true, {-5.12, 5.12}, -1.0, 10000},
    {"goldstein-price", 2, true, {-2.0, 2.0}, 3.0, 1000},
    {"griewank", 10, false, {-600.0, 600.0}, 0.0, 10000},
    {"levy", 10, false, {-10.0, 10.0}, 0.0, 10000},
    {"michalewicz", 5, false, {0.0, pi}, -4.687, 10000},
    {"rastrigin", 10, false, {-5.12, 5.12}, 0.0, 10000},
    {"rosenbrock", 10, false, {-5.0, 10.0}, 0.0, 10000},
    {"schwefel", 10, false, {-500.0, 500.0}, 0.0, 10000},
    {"sphere", 5, false, {-10.0, 10.0}, 0.0, 1000},
}};

// Michalewicz minimizers per coordinate index (1-based i = k + 1); the
// function is separable so the d-dimensional minimizer is the prefix.
// Obtained by grid search plus Nelder-Mead refinement.
constexpr std::array<double, 5> michalewicz_argmin{
    2.20290552, 1.57079633, 1.28499157, 1.92305847, 1.72046977};

// Michalewicz minima for the dimensions where they are tabulated.
std::optional<double> michalewicz_f_min(std::size_t d)
{
    switch (d) {
    case 2: return -1.8013;
    case 5: return -4.687;
    case 10: return -9.66015;
    default: return std::nullopt;
    }
}

using RawFn = double (*)(std::span<const double>);

RawFn raw_function(std::string_view name)
{
    if (name == "ackley") return &ackley;
    if (name == "beale") return &beale;
    if (name == "cross-in-tray") return &cross_in_tray;
    if (name == "drop-wave") return &drop_wave;
    if (name == "goldstein-price") return &goldstein_price;
    if (name == "griewank") return &griewank;
    if (name == "levy") return &levy;
    if (name == "michalewicz") return &michalewicz;
    if (name == "rastrigin") return &rastrigin;
    if (name == "rosenbrock") return &rosenbrock;
    if (name == "schwefel") return &schwefel;
    if (name == "sphere") return &sphere;
    return nullptr;
}

std::optional<std::vector<double>> known_minimizer(std::string_view name, std::size_t d)
{
    if (name == "ackley" || name == "griewank" || name == "rastrigin" || name == "sphere" ||
        name == "drop-wave")
        return std::vector<double>(d, 0.0);
    if (name == "levy" || name == "rosenbrock")
        return std::vector<double>(d, 1.0);
    if (name == "schwefel")
        return std::vector<double>(d, 420.9687);
    if (name == "beale")
        return std::vector<double>{3.0, 0.5};
    if (name == "goldstein-price")
        return std::vector<double>{0.0, -1.0};
    if (name == "cross-in-tray")
        return std::vector<double>{1.3494066, -1.3494066};
    if (name == "michalewicz" && d <= michalewicz_argmin.size() && michalewicz_f_min(d))
        return std::vector<double>(michalewicz_argmin.begin(), michalewicz_argmin.begin() + d);
    return std::nullopt;
}

} // namespace

double ackley(std::span<const double> x)
{
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(ackley_c * xi);
    }
    return -ackley_a * std::exp(-ackley_b * std::sqrt(sq / n)) - std::exp(cs / n) + ackley_a +
           std::exp(1.0);
}

double beale(std::span<const double> x)
{
    const double x1 = x[0];
    const double x2 = x[1];
    const double t1 = 1.5 - x1 + x1 * x2;
    const double t2 = 2.25 - x1 + x1 * x2 * x2;
    const double t3 = 2.625 - x1 + x1 * x2 * x2 * x2;
    return t1 * t1 + t2 * t2 + t3 * t3;
}

double cross_in_tray(std::span<const double> x)
{
    const double x1 = x[0];
    const double x2 = x[1];
    const double expo = std::abs(100.0 - std::sqrt(x1 * x1 + x2 * x2) / pi);
    const double inner = std::abs(std::sin(x1) * std::sin(x2) * std::exp(expo)) + 1.0;
    return -0.0001 * std::pow(inner, 0.1);
}

double drop_wave(std::span<const double> x)
{
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return -(1.0 + std::cos(12.0 * std::sqrt(r2))) / (0.5 * r2 + 2.0);
}

double goldstein_price(std::span<const double> x)
{
    const double x1 = x[0];
    const double x2 = x[1];
    const double s = x1 + x2 + 1.0;
    const double a = 1.0 + s * s *
                               (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 +
                                3.0 * x2 * x2);
    const double t = 2.0 * x1 - 3.0 * x2;
    const double b = 30.0 + t * t *
                                (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 +
                                 27.0 * x2 * x2);
    return a * b;
}

double griewank(std::span<const double> x)
{
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double levy(std::span<const double> x)
{
    const std::size_t d = x.size();
    auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    const double s1 = std::sin(pi * w(0));
    double total = s1 * s1;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double wi = w(i);
        const double s = std::sin(pi * wi + 1.0);
        total += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wd = w(d - 1);
    const double sd = std::sin(2.0 * pi * wd);
    total += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
    return total;
}

double michalewicz(std::span<const double> x)
{
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double inner = std::sin(static_cast<double>(i + 1) * xi * xi / pi);
        total -= std::sin(xi) * std::pow(inner, 2.0 * michalewicz_m);
    }
    return total;
}

double rastrigin(std::span<const double> x)
{
    double total = 10.0 * static_cast<double>(x.size());
    for (double xi : x)
        total += xi * xi - 10.0 * std::cos(2.0 * pi * xi);
    return total;
}

double rosenbrock(std::span<const double> x)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        total += 100.0 * a * a + b * b;
    }
    return total;
}

double schwefel(std::span<const double> x)
{
    double total = schwefel_offset * static_cast<double>(x.size());
    for (double xi : x)
        total -= xi * std::sin(std::sqrt(std::abs(xi)));
    return total;
}

double sphere(std::span<const double> x)
{
    double total = 0.0;
    for (double xi : x)
        total += xi * xi;
    return total;
}

std::span<const FunctionInfo> registry()
{
    return entries;
}

bool is_registered(std::string_view name)
{
    return std::any_of(entries.begin(), entries.end(),
                       [&](const FunctionInfo& e) { return e.name == name; });
}

const FunctionInfo& info(std::string_view name)
{
    for (const auto& e : entries) {
        if (e.name == name)
            return e;
    }
    throw Error(ErrorCode::unknown_function, "unknown function '" + std::string(name) + "'");
}

ObjectiveSpec spec_for(std::string_view name, std::optional<std::size_t> dimension)
{
    const FunctionInfo& entry = info(name);
    std::size_t d = entry.default_dimension;
    if (dimension) {
        if (entry.fixed_dimension && *dimension != entry.default_dimension)
            throw Error(ErrorCode::fixed_dimension,
                        "function '" + std::string(name) + "' is fixed at dimension " +
                            std::to_string(entry.default_dimension));
        if (*dimension == 0)
            throw Error(ErrorCode::invalid_argument, "dimension must be positive");
        d = *dimension;
    }

    ObjectiveSpec spec;
    spec.name = std::string(entry.name);
    spec.dimension = d;
    spec.init_box.assign(d, entry.box);
    spec.f_min = entry.f_min;
    if (entry.name == "michalewicz")
        spec.f_min = michalewicz_f_min(d).value_or(std::nan(""));
    spec.evaluate = raw_function(entry.name);
    spec.known_minimizer = known_minimizer(entry.name, d);
    return spec;
}

double evaluate(std::string_view name, std::span<const double> x)
{
    const FunctionInfo& entry = info(name);
    if (x.size() != entry.default_dimension)
        throw Error(ErrorCode::dimension_mismatch,
                    "function '" + std::string(name) + "' expects " +
                        std::to_string(entry.default_dimension) + " coordinates, got " +
                        std::to_string(x.size()));
    return raw_function(entry.name)(x);
}

} // namespace oscilswarm::testbed
