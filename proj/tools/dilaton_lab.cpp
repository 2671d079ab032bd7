#include "dlab/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

// dilaton-lab: scenario runner for the minisuperspace laboratory.
// Exit codes: 0 success, 1 task failure, 2 parse error, 3 validation error.

int main(int argc, char** argv) {
    CLI::App app{"minisuperspace dilaton cosmology laboratory"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string output_override;
    bool plots = false;
    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")
        ->required();
    run->add_option("--output", output_override,
                    "override the scenario output directory");
    run->add_flag("--plots", plots, "emit plot-ready files and stubs");

    CLI::App* tables = app.add_subcommand("tables", "special-function tables");
    std::vector<double> omegas{0.0, 0.5, 1.0, 2.0};
    std::vector<double> x_range{1e-2, 30.0};
    int n_points = 64;
    CLI::App* bessel = tables->add_subcommand("bessel", "CSV of K, I, J, N");
    bessel->add_option("--omega", omegas, "imaginary orders");
    bessel->add_option("--x-range", x_range, "log grid bounds")
        ->expected(2);
    bessel->add_option("--n", n_points, "points per order");
    tables->require_subcommand(1);

    CLI::App* version = app.add_subcommand("version", "print the version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (version->parsed()) {
            std::cout << "dilaton-lab 1.0.0\n";
            return 0;
        }
        if (tables->parsed()) {
            std::cout << dlab::bessel_table_csv(omegas, x_range[0],
                                                x_range[1], n_points);
            return 0;
        }
        dlab::Scenario sc = dlab::load_scenario(scenario_path);
        if (!output_override.empty()) sc.output_dir = output_override;
        dlab::RunReport report = dlab::run_scenario(sc);
        if (plots)
            for (const std::string& f : dlab::emit_plots(report))
                std::cerr << "plot file: " << f << "\n";
        std::cout << dlab::run_report_json(report);
        return report.any_failed() ? 1 : 0;
    } catch (const dlab::ScenarioParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const dlab::ScenarioValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
