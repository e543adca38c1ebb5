#pragma once

// Command implementations behind the genzgamma CLI. Each command returns a
// RunReport; rendering and exit codes are uniform across commands.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genzgamma/lemmas.hpp"
#include "genzgamma/types.hpp"

namespace genzgamma {

enum class ExitCode : int { ok = 0, violation = 1, invalid_input = 2, budget_exceeded = 3 };

enum class OutputFormat { json, csv, text };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
    std::string command;  // eval | verify-lemmas | verify-theorems | limits | explore
    std::string target;   // function name for eval, problem id for explore

    std::optional<std::int64_t> p;
    std::optional<double> q;
    std::optional<double> k;
    std::vector<double> t;  // evaluation points (eval) or g(t) values (verify-lemmas)
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<std::string> g_family;
    std::optional<double> alpha;
    std::optional<double> beta;

    SeriesBudget budget{};
    unsigned workers = 1;
    bool allow_out_of_hypothesis = false;
    bool paper_literal = false;  // eval gamma_q with the shifted product index

    std::map<std::string, std::string> ranges;  // explore axis overrides by axis name
    std::optional<std::int64_t> max_points;

    OutputFormat format = OutputFormat::text;
    std::optional<std::string> out;  // writes <out>.json and <out>.csv
    bool timing = false;
};

/// Throws DomainError for unknown commands or targets and inconsistent flags.
void validate(const RunConfig& config);

struct Summary {
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::int64_t inconclusive = 0;
};

struct RunReport {
    std::string command;
    nlohmann::json config;   // echo, including the defaults in effect
    nlohmann::json results;  // command specific
    Summary summary;
    ExitCode exit_code = ExitCode::ok;
    double wall_clock_seconds = 0.0;
    std::string csv;               // CSV projection
    std::vector<std::string> text;  // human-readable lines
};

RunReport cmd_eval(const RunConfig& config);
RunReport cmd_verify(const RunConfig& config);
RunReport cmd_limits(const RunConfig& config);
RunReport cmd_explore(const RunConfig& config);

/// Validates and dispatches on config.command; fills wall_clock_seconds.
RunReport run(const RunConfig& config);

/// Canonical JSON document. Wall-clock time is included only with
/// config.timing so that reports for the same config are byte-identical.
nlohmann::json to_json(const RunReport& report, bool timing);

std::string render(const RunReport& report, OutputFormat format, bool timing);

/// Writes <prefix>.json and <prefix>.csv.
void write_outputs(const RunReport& report, const std::string& prefix, bool timing);

/// One row of a limit table: |generalized - classical| in log space.
struct LimitRow {
    std::string family;
    std::string parameter;  // e.g. "p=64" or "q=0.99,k=1.01"
    double t = 0.0;
    double error = 0.0;
};

struct LimitPath {
    std::string family;
    double t = 0.0;
    std::vector<LimitRow> rows;
    bool strictly_decreasing = false;
    bool exact_zero_at_end = false;  // only for paths ending at the classical point
};

/// The limit paths tabulated by cmd_limits.
std::vector<LimitPath> limit_paths(const SeriesBudget& budget);

}  // namespace genzgamma
