#include "oscilswarm/harness.hpp"

#include "oscilswarm/testbed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iterator>
#include <memory>
#include <thread>
#include <vector>

namespace oscilswarm::harness {

namespace {

struct PreparedRow {
    std::unique_ptr<ObjectiveSpec> spec;
    std::string error;
};

void run_tasks(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task)
{
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                task(i);
        });
    }
}

std::string describe_failure(const std::exception_ptr& failure)
{
    try {
        std::rethrow_exception(failure);
    } catch (const Error& e) {
        return std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        return std::string("InternalError: ") + e.what();
    }
}

std::string status_code(const std::string& failure)
{
    return failure.substr(0, failure.find(':'));
}

} // namespace

ExperimentResult execute_plan(const ExperimentPlan& plan)
{
    if (plan.rows.empty())
        throw Error(ErrorCode::invalid_argument, "experiment plan has no rows");

    ExperimentResult result;
    result.rows.resize(plan.rows.size());
    std::vector<PreparedRow> prepared(plan.rows.size());

    struct Task {
        std::size_t row;
        std::size_t run;
    };
    std::vector<Task> tasks;

    for (std::size_t i = 0; i < plan.rows.size(); ++i) {
        const PlanRow& row = plan.rows[i];
        RowOutcome& out = result.rows[i];
        out.optimizer = row.label.empty() ? optimizer_name(row.optimizer) : row.label;
        out.function = row.function;
        try {
            auto spec = std::make_unique<ObjectiveSpec>(testbed::spec_for(row.function, row.dimension));
            out.dimension = spec->dimension;
            out.f_min = spec->f_min;
            out.budget = row.budget.value_or(testbed::info(row.function).default_budget);
            prepared[i].spec = std::move(spec);
        } catch (...) {
            prepared[i].error = describe_failure(std::current_exception());
            out.dimension = row.dimension.value_or(0);
            out.budget = row.budget.value_or(0);
            out.f_min = std::nan("");
        }
        out.records.resize(row.runs);
        out.results.resize(row.runs);
        for (std::size_t k = 0; k < row.runs; ++k) {
            RunResult& r = out.results[k];
            r.optimizer = out.optimizer;
            r.function = out.function;
            r.dimension = out.dimension;
            r.budget = out.budget;
            r.seed = row.base_seed + k;
            if (prepared[i].spec) {
                tasks.push_back({i, k});
            } else {
                r.final_value = std::nan("");
                r.status = status_code(prepared[i].error);
            }
        }
    }

    run_tasks(tasks.size(), plan.jobs, [&](std::size_t t) {
        const Task task = tasks[t];
        const PlanRow& row = plan.rows[task.row];
        RowOutcome& out = result.rows[task.row];
        RunResult& r = out.results[task.run];
        try {
            RunRecord record = run_optimizer(row.optimizer, *prepared[task.row].spec, out.budget, r.seed);
            record.optimizer = out.optimizer;
            r.final_value = record.best_value;
            r.evaluations_used = record.evaluations_used;
            out.records[task.run] = std::move(record);
        } catch (...) {
            const std::string failure = describe_failure(std::current_exception());
            r.final_value = std::nan("");
            r.evaluations_used = 0;
            r.status = status_code(failure);
        }
    });

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        RowOutcome& out = result.rows[i];
        if (!prepared[i].error.empty()) {
            out.status = prepared[i].error;
            continue;
        }
        std::vector<double> finals;
        for (const auto& r : out.results) {
            if (r.status != "ok") {
                out.status = r.status;
                break;
            }
            finals.push_back(r.final_value);
        }
        if (out.status == "ok" && !finals.empty())
            out.stats = summarize(finals);
    }
    return result;
}

std::vector<StatsRow> stats_rows(const ExperimentResult& result)
{
    std::vector<StatsRow> rows;
    for (const auto& row : result.rows) {
        if (!row.stats)
            continue;
        rows.push_back({row.function, row.budget, row.f_min, row.optimizer, *row.stats, "internal"});
    }
    return rows;
}

std::vector<StatsRow> stats_rows(std::span<const ExternalResult> external)
{
    struct Group {
        StatsRow row;
        std::vector<double> values;
    };
    std::vector<Group> groups;
    for (const auto& e : external) {
        const std::uint64_t budget = e.budget.value_or(0);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.row.optimizer == e.optimizer && g.row.function == e.function &&
                   g.row.budget == budget;
        });
        if (it == groups.end()) {
            Group g;
            g.row.function = e.function;
            g.row.optimizer = e.optimizer;
            g.row.budget = budget;
            g.row.source = "external";
            g.row.f_min = testbed::is_registered(e.function)
                              ? testbed::spec_for(e.function, e.dimension).f_min
                              : std::nan("");
            groups.push_back(std::move(g));
            it = std::prev(groups.end());
        }
        it->values.push_back(e.final_value);
    }
    std::vector<StatsRow> rows;
    for (auto& g : groups) {
        g.row.stats = summarize(g.values);
        rows.push_back(std::move(g.row));
    }
    return rows;
}

std::vector<ScalingRow> scaling_factor_sweep(const hopso::Config& base, const std::string& function,
                                             std::optional<std::size_t> dimension,
                                             std::optional<std::uint64_t> budget,
                                             std::span<const double> s_values, std::size_t runs,
                                             std::uint64_t base_seed, unsigned jobs)
{
    if (s_values.empty())
        throw Error(ErrorCode::invalid_argument, "scaling sweep needs at least one value of s");
    ExperimentPlan plan;
    plan.jobs = jobs;
    for (double s : s_values) {
        if (!(s > 0.0) || !std::isfinite(s))
            throw Error(ErrorCode::invalid_argument, "scaling factors must be positive");
        hopso::Config config = base;
        config.scaling = s;
        config.damping.reset();
        PlanRow row;
        row.optimizer = config;
        row.label = "hopso";
        row.function = function;
        row.dimension = dimension;
        row.budget = budget;
        row.runs = runs;
        row.base_seed = base_seed;
        plan.rows.push_back(std::move(row));
    }
    const ExperimentResult result = execute_plan(plan);
    std::vector<ScalingRow> out;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const RowOutcome& row = result.rows[i];
        if (!row.stats)
            throw Error(ErrorCode::invalid_argument, "scaling sweep row failed: " + row.status);
        out.push_back({s_values[i],
                       {row.function, row.budget, row.f_min, row.optimizer, *row.stats, "internal"}});
    }
    return out;
}

std::vector<PlanRow> comparison_rows(std::span<const OptimizerConfig> optimizers,
                                     std::span<const std::string> functions, std::size_t runs,
                                     std::uint64_t base_seed)
{
    std::vector<PlanRow> rows;
    for (const auto& function : functions) {
        for (const auto& optimizer : optimizers) {
            PlanRow row;
            row.optimizer = optimizer;
            row.label = optimizer_name(optimizer);
            row.function = function;
            row.runs = runs;
            row.base_seed = base_seed;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace oscilswarm::harness
