#include "oscilswarm/oscilswarm.h"

#include "oscilswarm/dynamics.hpp"
#include "oscilswarm/harness.hpp"
#include "oscilswarm/optimizer.hpp"
#include "oscilswarm/testbed.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

struct osw_optimizer {
    oscilswarm::OptimizerConfig config;
};

struct osw_experiment {
    oscilswarm::harness::ExperimentPlan plan;
    std::vector<std::string> pending_external;
    std::optional<oscilswarm::harness::ExperimentResult> result;
    std::vector<oscilswarm::harness::ExternalResult> external;
};

namespace {

using namespace oscilswarm;

thread_local std::string last_error;

osw_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_argument: return OSW_ERR_INVALID_ARGUMENT;
    case ErrorCode::unknown_function: return OSW_ERR_UNKNOWN_FUNCTION;
    case ErrorCode::unknown_optimizer: return OSW_ERR_UNKNOWN_OPTIMIZER;
    case ErrorCode::unknown_parameter: return OSW_ERR_UNKNOWN_PARAMETER;
    case ErrorCode::dimension_mismatch: return OSW_ERR_DIMENSION_MISMATCH;
    case ErrorCode::fixed_dimension: return OSW_ERR_FIXED_DIMENSION;
    case ErrorCode::invalid_interval: return OSW_ERR_INVALID_INTERVAL;
    case ErrorCode::budget_exhausted: return OSW_ERR_BUDGET_EXHAUSTED;
    case ErrorCode::budget_too_small: return OSW_ERR_BUDGET_TOO_SMALL;
    case ErrorCode::invalid_budget: return OSW_ERR_INVALID_BUDGET;
    case ErrorCode::degenerate_weights: return OSW_ERR_DEGENERATE_WEIGHTS;
    case ErrorCode::invalid_phi: return OSW_ERR_INVALID_PHI;
    case ErrorCode::population_too_small: return OSW_ERR_POPULATION_TOO_SMALL;
    case ErrorCode::empty_input: return OSW_ERR_EMPTY_INPUT;
    case ErrorCode::parse_error: return OSW_ERR_PARSE;
    case ErrorCode::schema_mismatch: return OSW_ERR_SCHEMA_MISMATCH;
    case ErrorCode::io_error: return OSW_ERR_IO;
    }
    return OSW_ERR_INTERNAL;
}

osw_status fail(osw_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

template <class F>
osw_status guarded(F&& body)
{
    try {
        body();
        last_error.clear();
        return OSW_OK;
    } catch (const Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(OSW_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OSW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OSW_ERR_INTERNAL, "unknown failure");
    }
}

void require(bool ok, const char* message)
{
    if (!ok)
        throw Error(ErrorCode::invalid_argument, message);
}

std::optional<std::size_t> opt_dim(std::size_t d)
{
    return d == 0 ? std::nullopt : std::optional<std::size_t>(d);
}

std::optional<std::uint64_t> opt_budget(std::uint64_t b)
{
    return b == 0 ? std::nullopt : std::optional<std::uint64_t>(b);
}

/// Destination file, or standard output for "-".
class Output {
public:
    explicit Output(const char* path) : path_(path ? path : "")
    {
        require(!path_.empty(), "output path is empty");
        if (path_ == "-")
            return;
        file_.open(path_, std::ios::binary | std::ios::trunc);
        if (!file_)
            throw Error(ErrorCode::io_error, "cannot open '" + path_ + "' for writing");
    }

    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

    void finish()
    {
        stream().flush();
        if (!stream())
            throw Error(ErrorCode::io_error, "failed writing '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

void copy_out(const std::string& text, char* buf, std::size_t cap)
{
    require(buf != nullptr && cap > 0, "output buffer is empty");
    const std::size_t n = std::min(text.size(), cap - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
}

void fill_info(const testbed::FunctionInfo& info, osw_function_info* out)
{
    out->name = info.name.data();
    out->dimension = info.default_dimension;
    out->fixed_dimension = info.fixed_dimension ? 1 : 0;
    out->lo = info.box.lo;
    out->hi = info.box.hi;
    out->f_min = info.f_min;
    out->default_budget = info.default_budget;
}

void fill_summary(const harness::SummaryStats& s, osw_summary* out)
{
    out->mean = s.mean;
    out->median = s.median;
    out->q1 = s.q1;
    out->q3 = s.q3;
    out->whisker_lo = s.whisker_lo;
    out->whisker_hi = s.whisker_hi;
    out->n_outliers = s.n_outliers;
    out->n_runs = s.n_runs;
}

const harness::ExperimentResult& executed(const osw_experiment* e)
{
    require(e != nullptr, "experiment handle is null");
    if (!e->result)
        throw Error(ErrorCode::invalid_argument, "experiment has not been executed");
    return *e->result;
}

} // namespace

extern "C" {

const char* osw_version(void)
{
    return "1.0.0";
}

const char* osw_status_name(osw_status status)
{
    switch (status) {
    case OSW_OK: return "OK";
    case OSW_ERR_INTERNAL: return "InternalError";
    default: break;
    }
    for (int c = static_cast<int>(ErrorCode::invalid_argument);
         c <= static_cast<int>(ErrorCode::io_error); ++c) {
        if (to_status(static_cast<ErrorCode>(c)) == status)
            return to_string(static_cast<ErrorCode>(c));
    }
    return "Unknown";
}

const char* osw_last_error(void)
{
    return last_error.c_str();
}

size_t osw_function_count(void)
{
    return testbed::registry().size();
}

osw_status osw_function_info_at(size_t index, osw_function_info* out)
{
    return guarded([&] {
        require(out != nullptr, "output pointer is null");
        const auto entries = testbed::registry();
        require(index < entries.size(), "function index out of range");
        fill_info(entries[index], out);
    });
}

osw_status osw_function_lookup(const char* name, osw_function_info* out)
{
    return guarded([&] {
        require(name != nullptr && out != nullptr, "null argument");
        fill_info(testbed::info(name), out);
    });
}

osw_status osw_function_evaluate(const char* name, size_t dimension, const double* x, size_t n,
                                 double* value)
{
    return guarded([&] {
        require(name != nullptr && value != nullptr && (x != nullptr || n == 0), "null argument");
        const ObjectiveSpec spec = testbed::spec_for(name, opt_dim(dimension));
        if (n != spec.dimension)
            throw Error(ErrorCode::dimension_mismatch,
                        "function '" + spec.name + "' expects " + std::to_string(spec.dimension) +
                            " coordinates, got " + std::to_string(n));
        *value = spec.evaluate(std::span<const double>(x, n));
    });
}

osw_status osw_optimizer_create(const char* kind, osw_optimizer** out)
{
    return guarded([&] {
        require(kind != nullptr && out != nullptr, "null argument");
        *out = new osw_optimizer{make_optimizer(kind)};
    });
}

void osw_optimizer_destroy(osw_optimizer* optimizer)
{
    delete optimizer;
}

osw_status osw_optimizer_set(osw_optimizer* optimizer, const char* key, double value)
{
    return guarded([&] {
        require(optimizer != nullptr && key != nullptr, "null argument");
        OptimizerConfig copy = optimizer->config;
        set_parameter(copy, key, value);
        optimizer->config = std::move(copy);
    });
}

osw_status osw_optimizer_kind(const osw_optimizer* optimizer, char* buf, size_t cap)
{
    return guarded([&] {
        require(optimizer != nullptr, "optimizer handle is null");
        copy_out(optimizer_name(optimizer->config), buf, cap);
    });
}

osw_status osw_run(const osw_optimizer* optimizer, const char* function, size_t dimension,
                   uint64_t budget, uint64_t seed, osw_run_summary* out)
{
    return guarded([&] {
        require(optimizer != nullptr && function != nullptr && out != nullptr, "null argument");
        const ObjectiveSpec spec = testbed::spec_for(function, opt_dim(dimension));
        const std::uint64_t b = budget == 0 ? testbed::info(function).default_budget : budget;
        const RunRecord record = run_optimizer(optimizer->config, spec, b, seed);
        out->best_value = record.best_value;
        out->evaluations_used = record.evaluations_used;
        out->trace_length = record.trace.size();
    });
}

osw_status osw_experiment_create(osw_experiment** out)
{
    return guarded([&] {
        require(out != nullptr, "output pointer is null");
        *out = new osw_experiment{};
    });
}

void osw_experiment_destroy(osw_experiment* experiment)
{
    delete experiment;
}

osw_status osw_experiment_add_row(osw_experiment* experiment, const osw_optimizer* optimizer,
                                  const char* function, size_t dimension, uint64_t budget,
                                  size_t runs, uint64_t base_seed)
{
    return guarded([&] {
        require(experiment != nullptr && optimizer != nullptr && function != nullptr,
                "null argument");
        require(runs > 0, "runs must be positive");
        testbed::spec_for(function, opt_dim(dimension));
        harness::PlanRow row;
        row.optimizer = optimizer->config;
        row.label = optimizer_name(optimizer->config);
        row.function = function;
        row.dimension = opt_dim(dimension);
        row.budget = opt_budget(budget);
        row.runs = runs;
        row.base_seed = base_seed;
        experiment->plan.rows.push_back(std::move(row));
        experiment->result.reset();
    });
}

osw_status osw_experiment_load_plan(osw_experiment* experiment, const char* path)
{
    return guarded([&] {
        require(experiment != nullptr && path != nullptr, "null argument");
        harness::PlanFile file = harness::load_plan(path);
        for (auto& row : file.plan.rows)
            experiment->plan.rows.push_back(std::move(row));
        experiment->plan.jobs = std::max(experiment->plan.jobs, file.plan.jobs);
        for (auto& p : file.external_paths)
            experiment->pending_external.push_back(std::move(p));
        experiment->result.reset();
    });
}

osw_status osw_experiment_set_jobs(osw_experiment* experiment, unsigned jobs)
{
    return guarded([&] {
        require(experiment != nullptr, "experiment handle is null");
        require(jobs > 0, "jobs must be positive");
        experiment->plan.jobs = jobs;
    });
}

osw_status osw_experiment_execute(osw_experiment* experiment)
{
    return guarded([&] {
        require(experiment != nullptr, "experiment handle is null");
        experiment->result = harness::execute_plan(experiment->plan);
        for (const auto& path : experiment->pending_external) {
            auto rows = harness::import_external_results(path);
            experiment->external.insert(experiment->external.end(), rows.begin(), rows.end());
        }
        experiment->pending_external.clear();
    });
}

osw_status osw_experiment_import_external(osw_experiment* experiment, const char* path)
{
    return guarded([&] {
        require(experiment != nullptr && path != nullptr, "null argument");
        auto rows = harness::import_external_results(path);
        experiment->external.insert(experiment->external.end(), rows.begin(), rows.end());
    });
}

size_t osw_experiment_row_count(const osw_experiment* experiment)
{
    return experiment ? experiment->plan.rows.size() : 0;
}

osw_status osw_experiment_row_stats(const osw_experiment* experiment, size_t row, int* ok,
                                    osw_summary* out)
{
    return guarded([&] {
        require(ok != nullptr && out != nullptr, "null argument");
        const auto& result = executed(experiment);
        require(row < result.rows.size(), "row index out of range");
        const auto& outcome = result.rows[row];
        *ok = outcome.stats ? 1 : 0;
        *out = osw_summary{};
        if (outcome.stats)
            fill_summary(*outcome.stats, out);
    });
}

osw_status osw_experiment_row_status(const osw_experiment* experiment, size_t row, char* buf,
                                     size_t cap)
{
    return guarded([&] {
        const auto& result = executed(experiment);
        require(row < result.rows.size(), "row index out of range");
        copy_out(result.rows[row].status, buf, cap);
    });
}

osw_status osw_experiment_write_results(const osw_experiment* experiment, const char* path)
{
    return guarded([&] {
        const auto& result = executed(experiment);
        Output out(path);
        harness::write_results_csv(out.stream(), result);
        out.finish();
    });
}

osw_status osw_experiment_write_table(const osw_experiment* experiment, const char* path,
                                      osw_table_format format)
{
    return guarded([&] {
        const auto& result = executed(experiment);
        harness::TableFormat fmt;
        switch (format) {
        case OSW_TABLE_CSV: fmt = harness::TableFormat::csv; break;
        case OSW_TABLE_JSON: fmt = harness::TableFormat::json; break;
        case OSW_TABLE_MARKDOWN: fmt = harness::TableFormat::markdown; break;
        default: throw Error(ErrorCode::invalid_argument, "unknown table format");
        }
        std::vector<harness::StatsRow> rows = harness::stats_rows(result);
        const auto external = harness::stats_rows(experiment->external);
        rows.insert(rows.end(), external.begin(), external.end());
        if (rows.empty())
            throw Error(ErrorCode::empty_input, "no successful rows to tabulate");
        Output out(path);
        out.stream() << harness::emit_table(rows, fmt);
        out.finish();
    });
}

osw_status osw_parse_table_format(const char* name, osw_table_format* out)
{
    return guarded([&] {
        require(name != nullptr && out != nullptr, "null argument");
        switch (harness::parse_table_format(name)) {
        case harness::TableFormat::csv: *out = OSW_TABLE_CSV; break;
        case harness::TableFormat::json: *out = OSW_TABLE_JSON; break;
        case harness::TableFormat::markdown: *out = OSW_TABLE_MARKDOWN; break;
        }
    });
}

osw_status osw_scaling_sweep(const osw_optimizer* hopso, const char* function, size_t dimension,
                             uint64_t budget, const double* s_values, size_t count, size_t runs,
                             uint64_t base_seed, unsigned jobs, const char* path)
{
    return guarded([&] {
        require(hopso != nullptr && function != nullptr && s_values != nullptr, "null argument");
        const auto* base = std::get_if<hopso::Config>(&hopso->config);
        require(base != nullptr, "scaling sweep needs a hopso optimizer");
        require(runs > 0, "runs must be positive");
        const auto rows = harness::scaling_factor_sweep(
            *base, function, opt_dim(dimension), opt_budget(budget),
            std::span<const double>(s_values, count), runs, base_seed, std::max(1u, jobs));
        Output out(path);
        harness::write_scaling_csv(out.stream(), rows);
        out.finish();
    });
}

osw_status osw_constriction_factor(double c1, double c2, double* chi)
{
    return guarded([&] {
        require(chi != nullptr, "output pointer is null");
        *chi = pso::constriction_factor(c1, c2);
    });
}

osw_status osw_eigenvalues(double chi, double phi, double re[2], double im[2])
{
    return guarded([&] {
        require(re != nullptr && im != nullptr, "null argument");
        const auto [l1, l2] = dynamics::eigenvalues_closed_form(chi, phi);
        re[0] = l1.real();
        im[0] = l1.imag();
        re[1] = l2.real();
        im[1] = l2.imag();
    });
}

int osw_converges(double chi, double phi)
{
    return dynamics::convergence_check(chi, phi) ? 1 : 0;
}

osw_status osw_singular_values(double chi, double c, double r, double* sigma1, double* sigma2)
{
    return guarded([&] {
        require(sigma1 != nullptr && sigma2 != nullptr, "null argument");
        const auto [s1, s2] = dynamics::singular_values(chi, c, r);
        *sigma1 = s1;
        *sigma2 = s2;
    });
}

osw_status osw_write_singular_value_sweep(double chi, double c, size_t samples, const char* path)
{
    return guarded([&] {
        require(chi > 0.0, "chi must be positive");
        const auto rows = dynamics::figure2_sweep(chi, c, samples);
        Output out(path);
        dynamics::write_sweep_csv(out.stream(), rows);
        out.finish();
    });
}

osw_status osw_write_trajectory(double chi, double c1, double c2, size_t steps, uint64_t seed,
                                const char* path)
{
    return guarded([&] {
        const auto norms = dynamics::random_product_trajectory(chi, c1, c2, steps, seed);
        Output out(path);
        dynamics::write_trajectory_csv(out.stream(), norms);
        out.finish();
    });
}

} // extern "C"
