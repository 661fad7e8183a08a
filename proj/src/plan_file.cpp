#include "oscilswarm/harness.hpp"

#include "oscilswarm/testbed.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>

namespace oscilswarm::harness {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t pos = value.find(',', start);
        const std::string item = trim(std::string_view(value).substr(start, pos - start));
        if (!item.empty())
            out.push_back(item);
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::parse_error, "plan line " + std::to_string(line) + ": " + what);
}

double to_real(const std::string& text, std::size_t line)
{
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail(line, "'" + text + "' is not a number");
    return value;
}

std::uint64_t to_count(const std::string& text, std::size_t line)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
        fail(line, "'" + text + "' is not a positive integer");
    return value;
}

} // namespace

PlanFile parse_plan(std::istream& in)
{
    std::vector<std::string> optimizer_names{"hopso", "pso", "de"};
    std::vector<std::string> functions;
    std::size_t runs = 50;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::optional<std::uint64_t> budget_all;
    std::map<std::string, std::uint64_t> budgets;
    std::map<std::string, std::size_t> dims;
    std::vector<std::tuple<std::string, std::string, double, std::size_t>> params;
    PlanFile out;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty())
            fail(line_no, "empty key or value");

        if (key == "optimizers") {
            optimizer_names = split_list(value);
            for (const auto& name : optimizer_names)
                make_optimizer(name);
        } else if (key == "functions") {
            functions = value == "all" ? std::vector<std::string>{} : split_list(value);
            for (const auto& name : functions)
                testbed::info(name);
        } else if (key == "runs") {
            runs = static_cast<std::size_t>(to_count(value, line_no));
        } else if (key == "seed") {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                fail(line_no, "'" + value + "' is not a seed");
            seed = v;
        } else if (key == "jobs") {
            jobs = static_cast<unsigned>(to_count(value, line_no));
        } else if (key == "budget") {
            budget_all = to_count(value, line_no);
        } else if (key == "external") {
            out.external_paths.push_back(value);
        } else if (key.rfind("budget.", 0) == 0) {
            const std::string fn = key.substr(7);
            testbed::info(fn);
            budgets[fn] = to_count(value, line_no);
        } else if (key.rfind("dim.", 0) == 0) {
            const std::string fn = key.substr(4);
            testbed::info(fn);
            dims[fn] = static_cast<std::size_t>(to_count(value, line_no));
        } else if (const auto dot = key.find('.'); dot != std::string::npos) {
            params.emplace_back(key.substr(0, dot), key.substr(dot + 1), to_real(value, line_no),
                                line_no);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }

    if (functions.empty()) {
        for (const auto& entry : testbed::registry())
            functions.emplace_back(entry.name);
    }
    if (optimizer_names.empty())
        throw Error(ErrorCode::parse_error, "plan lists no optimizers");

    std::vector<OptimizerConfig> optimizers;
    for (const auto& name : optimizer_names)
        optimizers.push_back(make_optimizer(name));
    for (const auto& [opt, param, value, line] : params) {
        bool matched = false;
        for (auto& config : optimizers) {
            if (optimizer_name(config) == opt) {
                set_parameter(config, param, value);
                matched = true;
            }
        }
        if (!matched)
            fail(line, "optimizer '" + opt + "' is not part of the plan");
    }

    out.plan.jobs = jobs;
    out.plan.rows = comparison_rows(optimizers, functions, runs, seed);
    for (auto& row : out.plan.rows) {
        if (auto it = budgets.find(row.function); it != budgets.end())
            row.budget = it->second;
        else if (budget_all)
            row.budget = budget_all;
        if (auto it = dims.find(row.function); it != dims.end())
            row.dimension = it->second;
    }
    return out;
}

PlanFile load_plan(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open plan file '" + path + "'");
    return parse_plan(in);
}

} // namespace oscilswarm::harness
