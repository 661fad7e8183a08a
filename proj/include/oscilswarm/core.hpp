#ifndef OSCILSWARM_CORE_HPP
#define OSCILSWARM_CORE_HPP

#include "oscilswarm/error.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace oscilswarm {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

using Evaluator = std::function<double(std::span<const double>)>;

/// A benchmark objective: evaluator, dimension, per-dimension initialization
/// box and known minimum. Copies share nothing mutable, so specs may be passed
/// freely between threads as long as the evaluator is reentrant.
struct ObjectiveSpec {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Interval> init_box;
    double f_min = 0.0;
    Evaluator evaluate;
    /// Point at which f_min is attained, when known.
    std::optional<std::vector<double>> known_minimizer;
};

/// Throws invalid_argument if the spec is malformed (zero dimension, box of
/// the wrong size, lo >= hi, missing evaluator).
void validate(const ObjectiveSpec& spec);

/// Counts objective evaluations against a fixed limit.
class BudgetMeter {
public:
    explicit BudgetMeter(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t remaining() const noexcept { return limit_ - used_; }
    bool can_afford(std::uint64_t n) const noexcept { return n <= remaining(); }

    /// Records one evaluation. Throws BudgetExhausted when none are left.
    void charge();

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

/// Seeded random stream. Sequences are bit-exact across platforms: the
/// engine is mt19937_64 and all derived draws avoid the implementation
/// defined standard distributions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();
    /// Uniform on [lo, hi); returns lo when lo == hi.
    double uniform(double lo, double hi);
    /// Uniform integer on [0, n). Requires n > 0.
    std::size_t index(std::size_t n);

    /// Independent substream identified by `stream_id`. Derivation depends only
    /// on this stream's seed, never on how many values were drawn.
    RngStream split(std::uint64_t stream_id) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_number(double value);

/// SplitMix64 finalizer, used for seed derivation.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Evaluates `spec` at `x`, charging one unit on `meter`.
double checked_evaluate(const ObjectiveSpec& spec, std::span<const double> x,
                        BudgetMeter& meter);

/// Uniform draw on [lo, hi). Throws invalid_interval when lo > hi.
double uniform_in(RngStream& rng, double lo, double hi);

struct TracePoint {
    std::uint64_t evaluations_used = 0;
    double best_value = 0.0;

    bool operator==(const TracePoint&) const = default;
};

struct RunRecord {
    std::string optimizer;
    std::string objective;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::string config;
    std::vector<TracePoint> trace;
    std::vector<double> best_position;
    double best_value = 0.0;
    std::uint64_t evaluations_used = 0;

    bool operator==(const RunRecord&) const = default;
};

/// Appends a trace point unless no evaluations happened since the last one.
void record_progress(RunRecord& record, std::uint64_t evaluations_used,
                     double best_value);

/// Throws invalid_argument unless the RunRecord invariants hold.
void check_run_record(const RunRecord& record);

} // namespace oscilswarm

#endif
