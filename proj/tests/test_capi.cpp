// Exercises the shared library through its C header only.
#include <oscilswarm/oscilswarm.h>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct Opt {
    osw_optimizer* p = nullptr;
    explicit Opt(const char* kind) { REQUIRE(osw_optimizer_create(kind, &p) == OSW_OK); }
    ~Opt() { osw_optimizer_destroy(p); }
};

struct Exp {
    osw_experiment* p = nullptr;
    Exp() { REQUIRE(osw_experiment_create(&p) == OSW_OK); }
    ~Exp() { osw_experiment_destroy(p); }
};

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::string(osw_version()) == "1.0.0");
    CHECK(std::string(osw_status_name(OSW_OK)) == "OK");
    CHECK(std::string(osw_status_name(OSW_ERR_UNKNOWN_FUNCTION)).size() > 0);
}

TEST_CASE("function registry")
{
    CHECK(osw_function_count() == 12);
    osw_function_info info{};
    REQUIRE(osw_function_info_at(0, &info) == OSW_OK);
    CHECK(std::string(info.name) == "ackley");
    CHECK(osw_function_info_at(12, &info) == OSW_ERR_INVALID_ARGUMENT);
    REQUIRE(osw_function_lookup("beale", &info) == OSW_OK);
    CHECK(info.fixed_dimension == 1);
    CHECK(info.dimension == 2);
    CHECK(info.default_budget == 1000);
    CHECK(osw_function_lookup("nosuch", &info) == OSW_ERR_UNKNOWN_FUNCTION);
    CHECK(std::string(osw_last_error()).find("nosuch") != std::string::npos);

    const double zero[5] = {0, 0, 0, 0, 0};
    double value = -1;
    REQUIRE(osw_function_evaluate("sphere", 0, zero, 5, &value) == OSW_OK);
    CHECK(value == 0.0);
    CHECK(osw_function_evaluate("sphere", 0, zero, 3, &value) == OSW_ERR_DIMENSION_MISMATCH);
    REQUIRE(osw_function_evaluate("rastrigin", 3, zero, 3, &value) == OSW_OK);
    CHECK(value == 0.0);
    CHECK(osw_function_evaluate("beale", 3, zero, 3, &value) == OSW_ERR_FIXED_DIMENSION);
    CHECK(osw_function_evaluate("sphere", 0, nullptr, 5, &value) == OSW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("optimizer handles")
{
    osw_optimizer* bad = nullptr;
    CHECK(osw_optimizer_create("nosuch", &bad) == OSW_ERR_UNKNOWN_OPTIMIZER);
    CHECK(bad == nullptr);

    Opt h("hopso");
    char kind[16];
    REQUIRE(osw_optimizer_kind(h.p, kind, sizeof kind) == OSW_OK);
    CHECK(std::string(kind) == "hopso");
    CHECK(osw_optimizer_set(h.p, "s", 1.0) == OSW_OK);
    CHECK(osw_optimizer_set(h.p, "chi", 1.0) == OSW_ERR_UNKNOWN_PARAMETER);
    CHECK(osw_optimizer_set(h.p, "omega", -1.0) != OSW_OK);

    osw_run_summary a{}, b{};
    REQUIRE(osw_run(h.p, "sphere", 0, 1000, 3, &a) == OSW_OK);
    REQUIRE(osw_run(h.p, "sphere", 0, 1000, 3, &b) == OSW_OK);
    CHECK(a.best_value == b.best_value);
    CHECK(a.evaluations_used == 1000);
    CHECK(a.trace_length > 0);
    CHECK(osw_run(h.p, "sphere", 0, 2, 3, &a) == OSW_ERR_BUDGET_TOO_SMALL);
    CHECK(osw_run(h.p, "nosuch", 0, 1000, 3, &a) == OSW_ERR_UNKNOWN_FUNCTION);

    Opt d("de");
    REQUIRE(osw_run(d.p, "sphere", 0, 0, 1, &a) == OSW_OK);
    CHECK(a.best_value < 1e-3);
}

TEST_CASE("experiment lifecycle")
{
    Opt h("hopso"), p("pso");
    Exp e;
    CHECK(osw_experiment_write_results(e.p, "never.csv") != OSW_OK);
    CHECK(osw_experiment_execute(e.p) == OSW_ERR_INVALID_ARGUMENT);
    CHECK(osw_experiment_add_row(e.p, h.p, "nosuch", 0, 0, 3, 1) == OSW_ERR_UNKNOWN_FUNCTION);
    REQUIRE(osw_experiment_add_row(e.p, h.p, "sphere", 0, 0, 4, 1) == OSW_OK);
    REQUIRE(osw_experiment_add_row(e.p, p.p, "sphere", 0, 0, 4, 1) == OSW_OK);
    REQUIRE(osw_experiment_set_jobs(e.p, 3) == OSW_OK);
    REQUIRE(osw_experiment_execute(e.p) == OSW_OK);
    CHECK(osw_experiment_row_count(e.p) == 2);

    int ok = 0;
    osw_summary s{};
    REQUIRE(osw_experiment_row_stats(e.p, 0, &ok, &s) == OSW_OK);
    CHECK(ok == 1);
    CHECK(s.n_runs == 4);
    CHECK(s.q1 <= s.median);
    CHECK(osw_experiment_row_stats(e.p, 5, &ok, &s) == OSW_ERR_INVALID_ARGUMENT);
    char status[32];
    REQUIRE(osw_experiment_row_status(e.p, 1, status, sizeof status) == OSW_OK);
    CHECK(std::string(status) == "ok");

    REQUIRE(osw_experiment_write_results(e.p, "capi_results.csv") == OSW_OK);
    const std::string results = slurp("capi_results.csv");
    CHECK(results.rfind("optimizer,function,dimension,budget,seed,final_value,evaluations_used,status\n", 0) == 0);
    CHECK(std::count(results.begin(), results.end(), '\n') == 9);

    {
        std::ofstream ext("capi_external.csv");
        ext << "optimizer,function,final_value\ncobyla,sphere,0.5\ncobyla,sphere,1.5\n";
    }
    REQUIRE(osw_experiment_import_external(e.p, "capi_external.csv") == OSW_OK);
    CHECK(osw_experiment_import_external(e.p, "missing.csv") == OSW_ERR_IO);

    osw_table_format fmt{};
    REQUIRE(osw_parse_table_format("markdown", &fmt) == OSW_OK);
    CHECK(fmt == OSW_TABLE_MARKDOWN);
    CHECK(osw_parse_table_format("xml", &fmt) == OSW_ERR_INVALID_ARGUMENT);
    REQUIRE(osw_experiment_write_table(e.p, "capi_table.md", fmt) == OSW_OK);
    CHECK(slurp("capi_table.md").find("cobyla (external)") != std::string::npos);
    REQUIRE(osw_experiment_write_table(e.p, "capi_table.csv", OSW_TABLE_CSV) == OSW_OK);
    const std::string table = slurp("capi_table.csv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);
    CHECK(osw_experiment_write_results(e.p, "/nonexistent/dir/x.csv") == OSW_ERR_IO);
}

TEST_CASE("plan files")
{
    {
        std::ofstream plan("capi_plan.txt");
        plan << "optimizers = pso\nfunctions = sphere,beale\nruns = 2\n";
    }
    Exp e;
    REQUIRE(osw_experiment_load_plan(e.p, "capi_plan.txt") == OSW_OK);
    REQUIRE(osw_experiment_execute(e.p) == OSW_OK);
    CHECK(osw_experiment_row_count(e.p) == 2);
    CHECK(osw_experiment_load_plan(e.p, "missing_plan.txt") == OSW_ERR_IO);
    {
        std::ofstream plan("capi_bad_plan.txt");
        plan << "optimizers = pso\nruns\n";
    }
    Exp f;
    CHECK(osw_experiment_load_plan(f.p, "capi_bad_plan.txt") == OSW_ERR_PARSE);
}

TEST_CASE("scaling sweep")
{
    Opt h("hopso"), p("pso");
    const double s[2] = {1, 10};
    REQUIRE(osw_scaling_sweep(h.p, "sphere", 0, 600, s, 2, 2, 1, 2, "capi_sweep.csv") == OSW_OK);
    const std::string text = slurp("capi_sweep.csv");
    CHECK(text.rfind("s,function,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(osw_scaling_sweep(p.p, "sphere", 0, 600, s, 2, 2, 1, 2, "capi_sweep.csv") ==
          OSW_ERR_INVALID_ARGUMENT);
    CHECK(osw_scaling_sweep(h.p, "sphere", 0, 600, s, 0, 2, 1, 2, "capi_sweep.csv") != OSW_OK);
}

TEST_CASE("stability analysis")
{
    double chi = 0;
    REQUIRE(osw_constriction_factor(2.05, 2.05, &chi) == OSW_OK);
    CHECK(std::fabs(chi - 0.7298) < 1e-4);
    CHECK(osw_constriction_factor(2, 2, &chi) == OSW_ERR_INVALID_PHI);

    double re[2], im[2];
    REQUIRE(osw_eigenvalues(0.729, 4.1, re, im) == OSW_OK);
    CHECK(std::hypot(re[0], im[0]) == doctest::Approx(std::sqrt(0.729)));
    CHECK(osw_converges(0.729, 4.1) == 1);
    CHECK(osw_converges(1.5, 4.1) == 0);

    double s1 = 0, s2 = 0;
    REQUIRE(osw_singular_values(0.729, 2.05, 2, &s1, &s2) == OSW_OK);
    CHECK(s1 > 3.5);
    CHECK(s1 < 4.0);
    CHECK(s1 * s2 == doctest::Approx(0.729));

    REQUIRE(osw_write_singular_value_sweep(0.729, 2.05, 50, "capi_fig.csv") == OSW_OK);
    const std::string fig = slurp("capi_fig.csv");
    CHECK(fig.rfind("r,sigma1,sigma2\n", 0) == 0);
    CHECK(std::count(fig.begin(), fig.end(), '\n') == 51);
    CHECK(osw_write_singular_value_sweep(0.0, 2.05, 50, "capi_fig.csv") == OSW_ERR_INVALID_ARGUMENT);
    CHECK(osw_write_singular_value_sweep(0.729, 2.05, 1, "capi_fig.csv") == OSW_ERR_INVALID_ARGUMENT);

    REQUIRE(osw_write_trajectory(0.729, 2.05, 2.05, 10, 4, "capi_traj.csv") == OSW_OK);
    const std::string traj = slurp("capi_traj.csv");
    CHECK(traj.rfind("step,norm\n1,", 0) == 0);
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 11);
    CHECK(osw_write_trajectory(0.729, 2.05, 2.05, 0, 4, "capi_traj.csv") == OSW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("null handles are rejected")
{
    osw_run_summary out{};
    CHECK(osw_run(nullptr, "sphere", 0, 1000, 1, &out) == OSW_ERR_INVALID_ARGUMENT);
    CHECK(osw_experiment_execute(nullptr) == OSW_ERR_INVALID_ARGUMENT);
    CHECK(osw_optimizer_create("pso", nullptr) == OSW_ERR_INVALID_ARGUMENT);
    osw_optimizer_destroy(nullptr);
    osw_experiment_destroy(nullptr);
}
