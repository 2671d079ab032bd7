#ifndef DLAB_SCENARIO_HPP
#define DLAB_SCENARIO_HPP

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Declarative scenario runner: one JSON file selects a constraint case and a
// task list (trajectory, time_check, wdw_modes, reduce, evolve, transform,
// symmetry, ordering, hj); every task appends one report entry and writes its
// artifacts under the scenario output directory.

namespace dlab {

class ScenarioParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ScenarioValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    std::string case_name;  // dilaton_k | dilaton_lambda | xy | taub | uv
    std::map<std::string, double> constants;  // k, c, lambda, cbar, zeta, ...
    std::vector<nlohmann::json> tasks;
    std::string output_dir;
    std::uint64_t seed = 20240517ULL;
};

// Throws ScenarioParseError on malformed JSON and ScenarioValidationError on
// schema violations (unknown case or task, case/constant inconsistencies
// such as taub with cbar >= 0 or lambda = 0, missing task parameters).
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j);

struct TaskReport {
    std::string name;
    std::string status;  // "ok" | "failed"
    std::string error;   // taxonomy name when failed
    std::map<std::string, double> residuals;
    double wall_ms = 0.0;
    std::vector<std::string> artifacts;  // paths of files written
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::vector<TaskReport> tasks;  // exactly one entry per scenario task

    bool any_failed() const;
};

RunReport run_scenario(const Scenario& scenario);

// with_timing=false gives the byte-stable form written to disk
std::string run_report_json(const RunReport& report, bool with_timing = true);

// Plot-ready files (plus a gnuplot stub each) from the artifacts referenced
// by the report; a missing artifact raises std::runtime_error.
std::vector<std::string> emit_plots(const RunReport& report);

// CSV table of K, I, J, N of imaginary order on a log grid in x.
std::string bessel_table_csv(const std::vector<double>& omegas, double x_lo,
                             double x_hi, int n);

}  // namespace dlab

#endif
