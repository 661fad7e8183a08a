// Command-line front end for the oscilswarm library.

#include "oscilswarm/oscilswarm.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

/// Carries the exit code out of nested helpers.
struct Failure {
    int code;
};

[[noreturn]] void fail(int code, const std::string& context)
{
    std::fprintf(stderr, "oscilswarm: %s: %s\n", context.c_str(), osw_last_error());
    throw Failure{code};
}

[[noreturn]] void usage(const std::string& message)
{
    std::fprintf(stderr, "oscilswarm: %s\n", message.c_str());
    throw Failure{exit_usage};
}

void check(osw_status status, int code, const std::string& context)
{
    if (status != OSW_OK)
        fail(code, context);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(',', start);
        std::string item = text.substr(start, pos == std::string::npos ? pos : pos - start);
        if (!item.empty())
            out.push_back(item);
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_positive(const std::string& text, const char* what)
{
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0) ||
        !std::isfinite(value))
        usage(std::string(what) + " must be a positive number, got '" + text + "'");
    return value;
}

std::uint64_t parse_seed(const std::string& text, const char* origin)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        usage(std::string(origin) + " is not a valid seed: '" + text + "'");
    return value;
}

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("OSCILSWARM_SEED"))
        return parse_seed(env, "OSCILSWARM_SEED");
    return 1;
}

unsigned default_jobs()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// RAII wrappers for the C handles.
class Optimizer {
public:
    explicit Optimizer(const std::string& kind)
    {
        check(osw_optimizer_create(kind.c_str(), &handle_), exit_usage, "--optimizer");
    }
    ~Optimizer() { osw_optimizer_destroy(handle_); }
    Optimizer(const Optimizer&) = delete;
    Optimizer& operator=(const Optimizer&) = delete;

    void set(const std::string& key, double value)
    {
        check(osw_optimizer_set(handle_, key.c_str(), value), exit_usage, "--" + key);
    }
    osw_optimizer* get() const { return handle_; }

private:
    osw_optimizer* handle_ = nullptr;
};

class Experiment {
public:
    Experiment() { check(osw_experiment_create(&handle_), exit_runtime, "experiment"); }
    ~Experiment() { osw_experiment_destroy(handle_); }
    Experiment(const Experiment&) = delete;
    Experiment& operator=(const Experiment&) = delete;
    osw_experiment* get() const { return handle_; }

private:
    osw_experiment* handle_ = nullptr;
};

/// Tunables shared by run, compare and sweep. Only flags given on the
/// command line are forwarded.
struct Tunables {
    std::map<std::string, double> values;

    void add_to(CLI::App* app)
    {
        const std::vector<std::pair<const char*, const char*>> flags{
            {"c1", "cognitive weight"},
            {"c2", "social weight"},
            {"omega", "hopso angular frequency"},
            {"lambda", "hopso damping rate"},
            {"s", "hopso scaling factor (damping = s * particles / budget)"},
            {"m", "hopso amplitude floor multiplier"},
            {"t-ul", "hopso upper limit of the time step"},
            {"particles", "hopso/pso swarm size"},
            {"chi", "pso constriction factor"},
            {"de-pop", "de population size"},
            {"de-f", "de mutation factor (fixed)"},
            {"de-cr", "de crossover rate"},
        };
        for (const auto& [name, help] : flags) {
            app->add_option_function<double>(
                   std::string("--") + name,
                   [this, key = std::string(name)](double v) { values[key] = v; }, help)
                ->group("Optimizer parameters");
        }
    }

    /// Applies the flags that belong to this optimizer kind. With `strict`,
    /// a flag the optimizer does not accept is a usage error.
    void apply(Optimizer& optimizer, const std::string& kind, bool strict) const
    {
        for (const auto& [flag, value] : values) {
            std::string key = flag;
            if (flag.rfind("de-", 0) == 0) {
                if (kind != "de") {
                    if (strict)
                        usage("--" + flag + " only applies to the de optimizer");
                    continue;
                }
                key = flag.substr(3);
            } else if (kind == "de") {
                if (strict)
                    usage("--" + flag + " does not apply to the de optimizer");
                continue;
            } else if (!strict && !accepts(kind, key)) {
                continue;
            }
            optimizer.set(key, value);
        }
    }

private:
    static bool accepts(const std::string& kind, const std::string& key)
    {
        if (kind == "pso")
            return key == "chi" || key == "c1" || key == "c2" || key == "particles";
        return key != "chi";
    }
};

struct Common {
    std::optional<std::string> seed_text;
    unsigned jobs = default_jobs();

    void add_to(CLI::App* app)
    {
        app->add_option("--seed", seed_text, "base seed; run k uses seed+k (default $OSCILSWARM_SEED or 1)");
        app->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    }
    std::uint64_t seed() const { return seed_text ? parse_seed(*seed_text, "--seed") : default_seed(); }
};

std::size_t lookup_dimension(const std::string& function)
{
    osw_function_info info{};
    check(osw_function_lookup(function.c_str(), &info), exit_usage, "--function");
    return info.dimension;
}

int cmd_run(const std::string& kind, const std::string& function, std::size_t dim,
            std::uint64_t budget, std::size_t runs, const Common& common, const Tunables& tunables,
            const std::string& out)
{
    const std::uint64_t seed = common.seed();
    Optimizer optimizer(kind);
    tunables.apply(optimizer, kind, true);
    lookup_dimension(function);

    Experiment experiment;
    check(osw_experiment_add_row(experiment.get(), optimizer.get(), function.c_str(), dim, budget,
                                 runs, seed),
          exit_usage, "run");
    check(osw_experiment_set_jobs(experiment.get(), common.jobs), exit_usage, "--jobs");
    check(osw_experiment_execute(experiment.get()), exit_runtime, "run");
    check(osw_experiment_write_results(experiment.get(), out.c_str()), exit_runtime, out);

    char status[128];
    check(osw_experiment_row_status(experiment.get(), 0, status, sizeof status), exit_runtime, "run");
    if (std::string(status) != "ok") {
        std::fprintf(stderr, "oscilswarm: run failed: %s\n", status);
        return exit_runtime;
    }
    return exit_ok;
}

struct CompareArgs {
    std::string functions = "all";
    std::string optimizers = "hopso,pso,de";
    std::size_t runs = 50;
    std::optional<std::string> out_table;
    std::optional<std::string> results;
    std::string format = "csv";
    std::vector<std::string> external;
    std::optional<std::string> plan;
};

int cmd_compare(const CompareArgs& args, const Common& common, const Tunables& tunables,
                bool jobs_given)
{
    osw_table_format format{};
    check(osw_parse_table_format(args.format.c_str(), &format), exit_usage, "--format");

    Experiment experiment;
    if (args.plan) {
        const osw_status status = osw_experiment_load_plan(experiment.get(), args.plan->c_str());
        check(status, status == OSW_ERR_IO ? exit_runtime : exit_usage, *args.plan);
    } else {
        const std::uint64_t seed = common.seed();
        std::vector<std::string> functions;
        if (args.functions == "all") {
            for (std::size_t i = 0; i < osw_function_count(); ++i) {
                osw_function_info info{};
                check(osw_function_info_at(i, &info), exit_runtime, "registry");
                functions.emplace_back(info.name);
            }
        } else {
            functions = split_list(args.functions);
        }
        const auto kinds = split_list(args.optimizers);
        if (functions.empty())
            usage("--functions lists no function");
        if (kinds.empty())
            usage("--optimizers lists no optimizer");

        std::vector<std::unique_ptr<Optimizer>> optimizers;
        for (const auto& kind : kinds) {
            optimizers.push_back(std::make_unique<Optimizer>(kind));
            tunables.apply(*optimizers.back(), kind, false);
        }
        for (const auto& function : functions) {
            lookup_dimension(function);
            for (const auto& optimizer : optimizers)
                check(osw_experiment_add_row(experiment.get(), optimizer->get(), function.c_str(),
                                             0, 0, args.runs, seed),
                      exit_usage, "compare");
        }
    }
    if (jobs_given || !args.plan)
        check(osw_experiment_set_jobs(experiment.get(), common.jobs), exit_usage, "--jobs");

    for (const auto& path : args.external) {
        const osw_status status = osw_experiment_import_external(experiment.get(), path.c_str());
        check(status, status == OSW_ERR_IO ? exit_runtime : exit_usage, path);
    }

    check(osw_experiment_execute(experiment.get()), exit_runtime, "compare");
    if (args.results)
        check(osw_experiment_write_results(experiment.get(), args.results->c_str()), exit_runtime,
              *args.results);
    const std::string table = args.out_table.value_or("-");
    check(osw_experiment_write_table(experiment.get(), table.c_str(), format), exit_runtime, table);

    int code = exit_ok;
    for (std::size_t i = 0; i < osw_experiment_row_count(experiment.get()); ++i) {
        char status[128];
        check(osw_experiment_row_status(experiment.get(), i, status, sizeof status), exit_runtime,
              "compare");
        if (std::string(status) != "ok") {
            std::fprintf(stderr, "oscilswarm: row %zu failed: %s\n", i, status);
            code = exit_runtime;
        }
    }
    return code;
}

int cmd_sweep(const std::string& function, const std::string& s_values, std::size_t dim,
              std::uint64_t budget, std::size_t runs, const Common& common,
              const Tunables& tunables, const std::string& out)
{
    std::vector<double> values;
    for (const auto& item : split_list(s_values))
        values.push_back(parse_positive(item, "--s-values"));
    if (values.empty())
        usage("--s-values lists no value");
    if (tunables.values.count("s") || tunables.values.count("lambda"))
        usage("--s and --lambda are set by the sweep itself");
    const std::uint64_t seed = common.seed();

    Optimizer optimizer("hopso");
    tunables.apply(optimizer, "hopso", true);
    lookup_dimension(function);
    const osw_status status =
        osw_scaling_sweep(optimizer.get(), function.c_str(), dim, budget, values.data(),
                          values.size(), runs, seed, common.jobs, out.c_str());
    const bool usage_error = status == OSW_ERR_FIXED_DIMENSION || status == OSW_ERR_UNKNOWN_FUNCTION;
    check(status, usage_error ? exit_usage : exit_runtime, "sweep");
    return exit_ok;
}

struct DynamicsArgs {
    double chi = 0.729;
    double c = 2.05;
    std::size_t samples = 200;
    std::size_t trajectory_steps = 0;
    std::string seeds = "1";
    std::string out;
};

std::string trajectory_path(const std::string& out, std::uint64_t seed)
{
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? out.substr(0, dot) : out;
    return stem + ".trajectory." + std::to_string(seed) + ".csv";
}

int cmd_dynamics(const DynamicsArgs& args)
{
    if (!(args.chi > 0.0) || !std::isfinite(args.chi))
        usage("--chi must be positive");
    if (args.samples < 2)
        usage("--samples must be at least 2");
    std::vector<std::uint64_t> seeds;
    for (const auto& item : split_list(args.seeds))
        seeds.push_back(parse_seed(item, "--seeds"));

    check(osw_write_singular_value_sweep(args.chi, args.c, args.samples, args.out.c_str()),
          exit_runtime, args.out);
    if (args.trajectory_steps > 0) {
        if (seeds.empty())
            usage("--seeds lists no seed");
        for (std::uint64_t seed : seeds) {
            const std::string path = trajectory_path(args.out, seed);
            check(osw_write_trajectory(args.chi, args.c, args.c, args.trajectory_steps, seed,
                                       path.c_str()),
                  exit_runtime, path);
        }
    }
    return exit_ok;
}

int cmd_list_functions()
{
    std::printf("%-16s %9s %6s %22s %10s %8s\n", "name", "dimension", "fixed", "box", "f_min",
                "budget");
    for (std::size_t i = 0; i < osw_function_count(); ++i) {
        osw_function_info info{};
        check(osw_function_info_at(i, &info), exit_runtime, "registry");
        char box[64];
        std::snprintf(box, sizeof box, "[%g, %g]", info.lo, info.hi);
        std::printf("%-16s %9zu %6s %22s %10g %8llu\n", info.name, info.dimension,
                    info.fixed_dimension ? "yes" : "no", box, info.f_min,
                    static_cast<unsigned long long>(info.default_budget));
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Harmonic-oscillator particle swarm optimization and baselines"};
    app.set_version_flag("--version", osw_version());
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "seeded runs of one optimizer on one function");
    std::string run_optimizer, run_function, run_out;
    std::size_t run_dim = 0, run_runs = 1;
    std::uint64_t run_budget = 0;
    Common run_common;
    Tunables run_tunables;
    run->add_option("--optimizer", run_optimizer, "hopso, pso or de")->required();
    run->add_option("--function", run_function, "benchmark function")->required();
    run->add_option("--dim", run_dim, "dimension (default: registered)")->check(CLI::PositiveNumber);
    run->add_option("--budget", run_budget, "evaluation budget (default: registered)")
        ->check(CLI::PositiveNumber);
    run->add_option("--runs", run_runs, "number of runs")->check(CLI::PositiveNumber);
    run->add_option("--out", run_out, "results CSV")->required();
    run_common.add_to(run);
    run_tunables.add_to(run);

    // compare
    auto* compare = app.add_subcommand("compare", "comparison table over functions and optimizers");
    CompareArgs compare_args;
    Common compare_common;
    Tunables compare_tunables;
    compare->add_option("--functions", compare_args.functions, "comma list or 'all'");
    compare->add_option("--optimizers", compare_args.optimizers, "comma list");
    compare->add_option("--runs", compare_args.runs, "runs per row")->check(CLI::PositiveNumber);
    compare->add_option("--out-table", compare_args.out_table, "table file, '-' for stdout (default)");
    compare->add_option("--results", compare_args.results, "also write per-run results CSV");
    compare->add_option("--format", compare_args.format, "csv, json or markdown");
    compare->add_option("--external", compare_args.external, "external results CSV (repeatable)");
    auto* plan_opt = compare->add_option("--plan", compare_args.plan, "plan file");
    compare_common.add_to(compare);
    compare_tunables.add_to(compare);
    for (const char* name : {"--functions", "--optimizers", "--runs", "--seed"})
        plan_opt->excludes(compare->get_option(name));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "hopso scaling-factor study");
    std::string sweep_function, sweep_values, sweep_out;
    std::size_t sweep_dim = 0, sweep_runs = 50;
    std::uint64_t sweep_budget = 0;
    Common sweep_common;
    Tunables sweep_tunables;
    sweep->add_option("--function", sweep_function, "benchmark function")->required();
    sweep->add_option("--s-values", sweep_values, "comma list of positive scaling factors")
        ->required();
    sweep->add_option("--dim", sweep_dim, "dimension (default: registered)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--budget", sweep_budget, "evaluation budget (default: registered)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--runs", sweep_runs, "runs per scaling factor")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "stats CSV")->required();
    sweep_common.add_to(sweep);
    sweep_tunables.add_to(sweep);

    // dynamics
    auto* dynamics = app.add_subcommand("dynamics", "singular values of the PSO dynamical matrix");
    DynamicsArgs dyn;
    dynamics->add_option("--chi", dyn.chi, "constriction factor");
    dynamics->add_option("--c", dyn.c, "acceleration coefficient (c1 = c2 = c)");
    dynamics->add_option("--samples", dyn.samples, "points on r in [0, 2]");
    dynamics->add_option("--trajectory-steps", dyn.trajectory_steps,
                         "random-product steps per seed (0: no trajectories)");
    dynamics->add_option("--seeds", dyn.seeds, "comma list of trajectory seeds");
    dynamics->add_option("--out", dyn.out, "sweep CSV; trajectories go next to it")->required();

    auto* list = app.add_subcommand("list-functions", "print the benchmark registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run)
            return cmd_run(run_optimizer, run_function, run_dim, run_budget, run_runs, run_common,
                           run_tunables, run_out);
        if (*compare)
            return cmd_compare(compare_args, compare_common, compare_tunables,
                               compare->count("--jobs") > 0);
        if (*sweep)
            return cmd_sweep(sweep_function, sweep_values, sweep_dim, sweep_budget, sweep_runs,
                             sweep_common, sweep_tunables, sweep_out);
        if (*dynamics)
            return cmd_dynamics(dyn);
        if (*list)
            return cmd_list_functions();
    } catch (const Failure& f) {
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "oscilswarm: %s\n", e.what());
        return exit_runtime;
    }
    return exit_usage;
}
