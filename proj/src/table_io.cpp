#include "oscilswarm/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace oscilswarm::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void parse_failure(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& text, std::size_t line, std::string_view column)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        parse_failure(line, "column '" + std::string(column) + "' is not a number: '" + text + "'");
    return value;
}

std::uint64_t parse_count(const std::string& text, std::size_t line, std::string_view column)
{
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        parse_failure(line,
                      "column '" + std::string(column) + "' is not a non-negative integer: '" + text + "'");
    return value;
}

std::string short_number(double value)
{
    if (!std::isfinite(value))
        return format_number(value);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", value);
    return buf;
}

double json_number(const ordered_json& j)
{
    return j.is_null() ? std::nan("") : j.get<double>();
}

} // namespace

void write_results_csv(std::ostream& out, const ExperimentResult& result)
{
    out << results_header << '\n';
    for (const auto& row : result.rows) {
        for (const auto& r : row.results) {
            out << r.optimizer << ',' << r.function << ',' << r.dimension << ',' << r.budget << ','
                << r.seed << ',' << format_number(r.final_value) << ',' << r.evaluations_used << ','
                << r.status << '\n';
        }
    }
}

std::vector<ExternalResult> parse_external_results(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::schema_mismatch,
                    "results file is empty; missing columns optimizer, function, final_value");

    std::map<std::string, std::size_t> columns;
    const auto header = split(trim(line), ',');
    for (std::size_t i = 0; i < header.size(); ++i)
        columns[trim(header[i])] = i;

    std::string missing;
    for (const char* required : {"optimizer", "function", "final_value"}) {
        if (!columns.count(required))
            missing += missing.empty() ? required : std::string(", ") + required;
    }
    if (!missing.empty())
        throw Error(ErrorCode::schema_mismatch, "results file is missing columns: " + missing);

    auto column = [&](const char* name) -> std::optional<std::size_t> {
        auto it = columns.find(name);
        return it == columns.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    };
    const std::size_t c_opt = *column("optimizer");
    const std::size_t c_fun = *column("function");
    const std::size_t c_val = *column("final_value");
    const auto c_dim = column("dimension");
    const auto c_budget = column("budget");
    const auto c_status = column("status");

    std::vector<ExternalResult> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty())
            continue;
        const auto fields = split(content, ',');
        if (fields.size() != header.size())
            parse_failure(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
        if (c_status && trim(fields[*c_status]) != "ok")
            continue;
        ExternalResult r;
        r.optimizer = trim(fields[c_opt]);
        r.function = trim(fields[c_fun]);
        if (r.optimizer.empty() || r.function.empty())
            parse_failure(line_no, "optimizer and function must be non-empty");
        r.final_value = parse_real(trim(fields[c_val]), line_no, "final_value");
        if (c_dim)
            r.dimension = static_cast<std::size_t>(parse_count(trim(fields[*c_dim]), line_no, "dimension"));
        if (c_budget)
            r.budget = parse_count(trim(fields[*c_budget]), line_no, "budget");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ExternalResult> import_external_results(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open results file '" + path + "'");
    return parse_external_results(in);
}

TableFormat parse_table_format(std::string_view name)
{
    if (name == "csv")
        return TableFormat::csv;
    if (name == "json")
        return TableFormat::json;
    if (name == "markdown" || name == "md")
        return TableFormat::markdown;
    throw Error(ErrorCode::invalid_argument, "unknown table format '" + std::string(name) + "'");
}

std::string emit_table(std::span<const StatsRow> rows, TableFormat format)
{
    std::ostringstream out;
    switch (format) {
    case TableFormat::csv:
        out << stats_header << '\n';
        for (const auto& r : rows) {
            const auto& s = r.stats;
            out << r.function << ',' << r.budget << ',' << format_number(r.f_min) << ','
                << r.optimizer << ',' << format_number(s.mean) << ',' << format_number(s.median)
                << ',' << format_number(s.q1) << ',' << format_number(s.q3) << ','
                << format_number(s.whisker_lo) << ',' << format_number(s.whisker_hi) << ','
                << s.n_outliers << ',' << s.n_runs << '\n';
        }
        break;
    case TableFormat::json: {
        ordered_json array = ordered_json::array();
        for (const auto& r : rows) {
            const auto& s = r.stats;
            ordered_json j;
            j["function"] = r.function;
            j["budget"] = r.budget;
            j["f_min"] = r.f_min;
            j["optimizer"] = r.optimizer;
            j["mean"] = s.mean;
            j["median"] = s.median;
            j["q1"] = s.q1;
            j["q3"] = s.q3;
            j["whisker_lo"] = s.whisker_lo;
            j["whisker_hi"] = s.whisker_hi;
            j["n_outliers"] = s.n_outliers;
            j["n_runs"] = s.n_runs;
            j["source"] = r.source;
            array.push_back(std::move(j));
        }
        out << array.dump(2) << '\n';
        break;
    }
    case TableFormat::markdown: {
        std::vector<std::pair<std::string, std::string>> optimizers;
        std::vector<std::pair<std::string, std::uint64_t>> functions;
        for (const auto& r : rows) {
            const std::pair<std::string, std::string> opt{r.optimizer, r.source};
            if (std::find(optimizers.begin(), optimizers.end(), opt) == optimizers.end())
                optimizers.push_back(opt);
            const std::pair<std::string, std::uint64_t> fun{r.function, r.budget};
            if (std::find(functions.begin(), functions.end(), fun) == functions.end())
                functions.push_back(fun);
        }
        out << "| Function | Function evaluations | F_min |";
        for (const auto& [name, source] : optimizers)
            out << ' ' << name << (source == "external" ? " (external)" : "") << " |";
        out << "\n|---|---|---|";
        for (std::size_t i = 0; i < optimizers.size(); ++i)
            out << "---|";
        out << '\n';
        for (const auto& [function, budget] : functions) {
            const StatsRow* first = nullptr;
            std::vector<const StatsRow*> cells(optimizers.size(), nullptr);
            for (const auto& r : rows) {
                if (r.function != function || r.budget != budget)
                    continue;
                if (!first)
                    first = &r;
                for (std::size_t k = 0; k < optimizers.size(); ++k) {
                    if (optimizers[k].first == r.optimizer && optimizers[k].second == r.source &&
                        !cells[k])
                        cells[k] = &r;
                }
            }
            out << "| " << function << " | " << budget << " | " << short_number(first->f_min) << " |";
            for (const auto* cell : cells)
                out << ' ' << (cell ? short_number(cell->stats.mean) : std::string("-")) << " |";
            out << '\n';
        }
        break;
    }
    }
    return out.str();
}

std::vector<StatsRow> read_table_json(std::string_view text)
{
    ordered_json array;
    try {
        array = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("invalid table json: ") + e.what());
    }
    if (!array.is_array())
        throw Error(ErrorCode::schema_mismatch, "table json must be an array");
    std::vector<StatsRow> rows;
    try {
        for (const auto& j : array) {
            StatsRow r;
            r.function = j.at("function").get<std::string>();
            r.budget = j.at("budget").get<std::uint64_t>();
            r.f_min = json_number(j.at("f_min"));
            r.optimizer = j.at("optimizer").get<std::string>();
            r.stats.mean = json_number(j.at("mean"));
            r.stats.median = json_number(j.at("median"));
            r.stats.q1 = json_number(j.at("q1"));
            r.stats.q3 = json_number(j.at("q3"));
            r.stats.whisker_lo = json_number(j.at("whisker_lo"));
            r.stats.whisker_hi = json_number(j.at("whisker_hi"));
            r.stats.n_outliers = j.at("n_outliers").get<std::size_t>();
            r.stats.n_runs = j.at("n_runs").get<std::size_t>();
            r.source = j.value("source", std::string("internal"));
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::schema_mismatch, std::string("table json row: ") + e.what());
    }
    return rows;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows)
{
    std::vector<StatsRow> plain;
    for (const auto& r : rows)
        plain.push_back(r.row);
    const std::string table = emit_table(plain, TableFormat::csv);
    std::istringstream lines(table);
    std::string line;
    std::size_t i = 0;
    std::getline(lines, line);
    out << "s," << line << '\n';
    while (std::getline(lines, line))
        out << format_number(rows[i++].scaling) << ',' << line << '\n';
}

} // namespace oscilswarm::harness
