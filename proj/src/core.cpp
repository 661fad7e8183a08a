#include "oscilswarm/core.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace oscilswarm {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::unknown_function: return "UnknownFunction";
    case ErrorCode::unknown_optimizer: return "UnknownOptimizer";
    case ErrorCode::unknown_parameter: return "UnknownParameter";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::fixed_dimension: return "FixedDimension";
    case ErrorCode::invalid_interval: return "InvalidInterval";
    case ErrorCode::budget_exhausted: return "BudgetExhausted";
    case ErrorCode::budget_too_small: return "BudgetTooSmall";
    case ErrorCode::invalid_budget: return "InvalidBudget";
    case ErrorCode::degenerate_weights: return "DegenerateWeights";
    case ErrorCode::invalid_phi: return "InvalidPhi";
    case ErrorCode::population_too_small: return "PopulationTooSmall";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

void validate(const ObjectiveSpec& spec)
{
    if (spec.dimension == 0)
        throw Error(ErrorCode::invalid_argument, "objective '" + spec.name + "' has dimension 0");
    if (spec.init_box.size() != spec.dimension)
        throw Error(ErrorCode::invalid_argument,
                    "objective '" + spec.name + "' init box does not match its dimension");
    for (const auto& iv : spec.init_box) {
        if (!(iv.lo < iv.hi))
            throw Error(ErrorCode::invalid_argument,
                        "objective '" + spec.name + "' has an empty init interval");
    }
    if (!spec.evaluate)
        throw Error(ErrorCode::invalid_argument, "objective '" + spec.name + "' has no evaluator");
}

BudgetMeter::BudgetMeter(std::uint64_t limit) : limit_(limit)
{
    if (limit == 0)
        throw Error(ErrorCode::invalid_budget, "budget must be positive");
}

void BudgetMeter::charge()
{
    if (used_ >= limit_)
        throw BudgetExhausted("evaluation budget of " + std::to_string(limit_) + " exhausted");
    ++used_;
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

double RngStream::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    if (lo == hi)
        return lo;
    const double value = lo + (hi - lo) * uniform01();
    // rounding can land exactly on hi for wide intervals
    return value < hi ? value : std::nextafter(hi, lo);
}

std::size_t RngStream::index(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorCode::invalid_argument, "index range must be non-empty");
    const std::uint64_t range = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % range);
}

RngStream RngStream::split(std::uint64_t stream_id) const
{
    return RngStream(mix_seed(seed_ ^ mix_seed(stream_id + 0x632be59bd9b4e019ULL)));
}

double checked_evaluate(const ObjectiveSpec& spec, std::span<const double> x,
                        BudgetMeter& meter)
{
    if (x.size() != spec.dimension)
        throw Error(ErrorCode::dimension_mismatch,
                    "objective '" + spec.name + "' expects " + std::to_string(spec.dimension) +
                        " coordinates, got " + std::to_string(x.size()));
    meter.charge();
    return spec.evaluate(x);
}

double uniform_in(RngStream& rng, double lo, double hi)
{
    if (lo > hi)
        throw Error(ErrorCode::invalid_interval, "interval lower bound exceeds upper bound");
    return rng.uniform(lo, hi);
}

void record_progress(RunRecord& record, std::uint64_t evaluations_used, double best_value)
{
    if (!record.trace.empty() && evaluations_used <= record.trace.back().evaluations_used)
        return;
    record.trace.push_back({evaluations_used, best_value});
}

void check_run_record(const RunRecord& record)
{
    if (record.trace.empty())
        throw Error(ErrorCode::invalid_argument, "run record has an empty trace");
    for (std::size_t i = 1; i < record.trace.size(); ++i) {
        const auto& prev = record.trace[i - 1];
        const auto& cur = record.trace[i];
        if (cur.evaluations_used <= prev.evaluations_used)
            throw Error(ErrorCode::invalid_argument, "trace evaluations not strictly increasing");
        if (cur.best_value > prev.best_value)
            throw Error(ErrorCode::invalid_argument, "trace best value increased");
    }
    if (record.trace.back().evaluations_used > record.budget)
        throw Error(ErrorCode::invalid_argument, "trace exceeds the budget");
}

} // namespace oscilswarm
