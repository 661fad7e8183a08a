#ifndef OSCILSWARM_HARNESS_HPP
#define OSCILSWARM_HARNESS_HPP

#include "oscilswarm/core.hpp"
#include "oscilswarm/optimizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oscilswarm::harness {

/// Box-plot summary. Quartiles use linear interpolation between closest
/// ranks; whiskers are the most extreme values inside the 1.5 IQR fences,
/// never inside the box.
/// The mean covers every value, outliers included.
struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_lo = 0.0;
    double whisker_hi = 0.0;
    std::size_t n_outliers = 0;
    std::size_t n_runs = 0;

    bool operator==(const SummaryStats&) const = default;
};

/// Throws EmptyInput.
SummaryStats summarize(std::span<const double> values);

/// Linear-interpolation quantile of sorted data, p in [0, 1].
double quantile(std::span<const double> sorted, double p);

struct PlanRow {
    OptimizerConfig optimizer;
    /// Name written to output files; defaults to the optimizer name.
    std::string label;
    std::string function;
    std::optional<std::size_t> dimension;
    /// Defaults to the function's registered budget.
    std::optional<std::uint64_t> budget;
    std::size_t runs = 50;
    /// Run k uses seed base_seed + k.
    std::uint64_t base_seed = 1;
};

struct ExperimentPlan {
    std::vector<PlanRow> rows;
    /// Worker threads; output does not depend on it.
    unsigned jobs = 1;
};

/// One line of the results CSV.
struct RunResult {
    std::string optimizer;
    std::string function;
    std::size_t dimension = 0;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    double final_value = 0.0;
    std::uint64_t evaluations_used = 0;
    std::string status = "ok";

    bool operator==(const RunResult&) const = default;
};

struct RowOutcome {
    std::string optimizer;
    std::string function;
    std::size_t dimension = 0;
    std::uint64_t budget = 0;
    double f_min = 0.0;
    /// "ok", or the first error met while running the row.
    std::string status = "ok";
    std::vector<RunRecord> records;
    std::vector<RunResult> results;
    std::optional<SummaryStats> stats;
};

struct ExperimentResult {
    std::vector<RowOutcome> rows;
};

/// Runs every (row, run) pair, possibly in parallel, and merges the results
/// in (row, run) order. A failing row is marked and does not stop the others.
/// Throws invalid_argument for an empty plan.
ExperimentResult execute_plan(const ExperimentPlan& plan);

/// One row of a comparison table.
struct StatsRow {
    std::string function;
    std::uint64_t budget = 0;
    double f_min = 0.0;
    std::string optimizer;
    SummaryStats stats;
    /// "internal" or "external".
    std::string source = "internal";

    bool operator==(const StatsRow&) const = default;
};

/// Externally produced result, one per CSV line.
struct ExternalResult {
    std::string optimizer;
    std::string function;
    std::optional<std::size_t> dimension;
    std::optional<std::uint64_t> budget;
    double final_value = 0.0;
};

inline constexpr std::string_view results_header =
    "optimizer,function,dimension,budget,seed,final_value,evaluations_used,status";
inline constexpr std::string_view stats_header =
    "function,budget,f_min,optimizer,mean,median,q1,q3,whisker_lo,whisker_hi,n_outliers,n_runs";

void write_results_csv(std::ostream& out, const ExperimentResult& result);

/// Reads a results CSV. Requires the optimizer, function and final_value
/// columns; lines whose status column is present and not "ok" are skipped.
/// Throws ParseError (with line number) or SchemaMismatch.
std::vector<ExternalResult> parse_external_results(std::istream& in);
std::vector<ExternalResult> import_external_results(const std::string& path);

/// Stats rows for every successful plan row, in plan order.
std::vector<StatsRow> stats_rows(const ExperimentResult& result);

/// Groups external results by (optimizer, function, budget) in order of first
/// appearance and summarizes each group.
std::vector<StatsRow> stats_rows(std::span<const ExternalResult> external);

enum class TableFormat { csv, json, markdown };

/// Throws invalid_argument for an unrecognized name.
TableFormat parse_table_format(std::string_view name);

/// csv and json hold one entry per (function, optimizer) row in input order.
/// markdown pivots to one line per function with a mean column per
/// optimizer; external optimizers are tagged in the header.
std::string emit_table(std::span<const StatsRow> rows, TableFormat format);

/// Inverse of emit_table(..., json).
std::vector<StatsRow> read_table_json(std::string_view text);

struct ScalingRow {
    double scaling = 0.0;
    StatsRow row;
};

/// HOPSO runs on one function for each scaling factor. `base` provides every
/// other tunable; its damping/scaling choice is overridden.
std::vector<ScalingRow> scaling_factor_sweep(const hopso::Config& base, const std::string& function,
                                             std::optional<std::size_t> dimension,
                                             std::optional<std::uint64_t> budget,
                                             std::span<const double> s_values, std::size_t runs,
                                             std::uint64_t base_seed, unsigned jobs);

/// CSV with an "s" column in front of the stats columns.
void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

/// Declarative plan file: "key = value" lines, '#' starts a comment.
///   optimizers = hopso,pso,de      functions = all | name,name,...
///   runs = 50   seed = 1   jobs = 4   budget = 10000
///   budget.<function> = N          dim.<function> = N
///   <optimizer>.<parameter> = value   (e.g. hopso.s = 10)
///   external = path                (may repeat)
struct PlanFile {
    ExperimentPlan plan;
    std::vector<std::string> external_paths;
};

/// Throws ParseError with the offending line number, or the underlying
/// UnknownFunction/UnknownOptimizer/UnknownParameter error.
PlanFile parse_plan(std::istream& in);
PlanFile load_plan(const std::string& path);

/// Function-major rows: every function, and within it every optimizer.
std::vector<PlanRow> comparison_rows(std::span<const OptimizerConfig> optimizers,
                                     std::span<const std::string> functions, std::size_t runs,
                                     std::uint64_t base_seed);

} // namespace oscilswarm::harness

#endif
