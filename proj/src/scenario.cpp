#include "dlab/scenario.hpp"

#include "dlab/bessel.hpp"
#include "dlab/canonical.hpp"
#include "dlab/cases.hpp"
#include "dlab/hj.hpp"
#include "dlab/modes.hpp"
#include "dlab/operators.hpp"
#include "dlab/symmetry.hpp"
#include "dlab/transform.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace dlab {

namespace {

using nlohmann::json;
using cplx = std::complex<double>;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::set<std::string> kCases = {"dilaton_k", "dilaton_lambda", "xy",
                                      "taub", "uv"};
const std::set<std::string> kTasks = {"trajectory", "time_check", "wdw_modes",
                                      "reduce",     "evolve",     "transform",
                                      "symmetry",   "ordering",   "hj"};

double constant(const Scenario& sc, const std::string& key) {
    auto it = sc.constants.find(key);
    if (it == sc.constants.end())
        throw ScenarioValidationError("case '" + sc.case_name +
                                      "' needs constant '" + key + "'");
    return it->second;
}

void require_keys(const json& task, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (!task.contains(k))
            throw ScenarioValidationError(
                "task '" + task.value("task", std::string("?")) +
                "' missing parameter '" + k + "'");
}

MinisuperspaceModel model_for(const Scenario& sc) {
    if (sc.case_name == "dilaton_k")
        return make_dilaton_k_model(constant(sc, "c"), constant(sc, "k"));
    if (sc.case_name == "dilaton_lambda")
        return make_dilaton_lambda_model(constant(sc, "c"),
                                         constant(sc, "lambda"));
    if (sc.case_name == "xy") return make_xy_model(constant(sc, "zeta"));
    if (sc.case_name == "taub")
        return make_taub_model(constant(sc, "cbar"), constant(sc, "lambda"));
    return make_uv_model(constant(sc, "eta"), constant(sc, "m2"));
}

void validate(const Scenario& sc) {
    if (!kCases.count(sc.case_name))
        throw ScenarioValidationError("unknown case '" + sc.case_name + "'");
    if (sc.case_name == "taub") {
        if (!(constant(sc, "cbar") < 0.0))
            throw ScenarioValidationError(
                "taub requires cbar < 0 (got cbar = " +
                fmt(constant(sc, "cbar")) + ")");
        if (constant(sc, "lambda") == 0.0)
            throw ScenarioValidationError("taub requires lambda != 0");
    }
    if (sc.case_name == "xy" && constant(sc, "zeta") == 0.0)
        throw ScenarioValidationError("xy requires zeta != 0");
    if (sc.case_name == "uv") {
        if (!(constant(sc, "m2") > 0.0))
            throw ScenarioValidationError("uv requires m^2 > 0");
        const double eta = constant(sc, "eta");
        if (eta != 1.0 && eta != -1.0)
            throw ScenarioValidationError("uv requires eta = +-1");
    }
    for (const json& task : sc.tasks) {
        if (!task.is_object() || !task.contains("task"))
            throw ScenarioValidationError("every task needs a 'task' name");
        const std::string name = task["task"];
        if (!kTasks.count(name))
            throw ScenarioValidationError("unknown task '" + name + "'");
        if (name == "trajectory") require_keys(task, {"steps", "dt", "q"});
        if (name == "time_check") require_keys(task, {"axis", "sign"});
        if (name == "wdw_modes")
            require_keys(task, {"omega", "families", "grid0", "grid1"});
        if (name == "reduce")
            require_keys(task, {"clock_axis", "grid", "n_modes"});
        if (name == "evolve") require_keys(task, {"clock_axis", "grid", "clock"});
        if (name == "transform") require_keys(task, {"grid_q", "grid_Q"});
        if (name == "symmetry")
            require_keys(task, {"omegas", "grid0", "grid1"});
        if (name == "ordering") require_keys(task, {"A", "C", "b", "grid"});
        if (name == "hj") require_keys(task, {"alpha", "steps", "dt", "q"});
        if ((name == "wdw_modes" || name == "symmetry") &&
            sc.case_name != "xy" && sc.case_name != "taub")
            throw ScenarioValidationError("task '" + name +
                                          "' needs the xy or taub case");
        if (name == "hj" && sc.case_name != "uv")
            throw ScenarioValidationError("task 'hj' needs the uv case");
    }
    model_for(sc);  // surfaces missing constants for the remaining cases
}

Grid1D grid_from(const json& g) {
    return Grid1D(g.at("lo").get<double>(), g.at("hi").get<double>(),
                  g.at("n").get<int>());
}

std::string write_artifact(const std::string& dir, const std::string& file,
                           const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::string path = (std::filesystem::path(dir) / file).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
    return path;
}

// on-constraint samples with the positive p0 root; p1 drawn positive so the
// +q1 clock candidates have a definite orientation
std::vector<PhaseState> sample_states(const MinisuperspaceModel& model,
                                      std::mt19937_64& rng, int count,
                                      double box, double p1_lo, double p1_hi) {
    std::uniform_real_distribution<double> coord(-box, box);
    std::uniform_real_distribution<double> mom(p1_lo, p1_hi);
    std::vector<PhaseState> states;
    int guard = 0;
    while (static_cast<int>(states.size()) < count) {
        PhaseState partial;
        partial.q = {coord(rng), coord(rng)};
        partial.p = {0.0, mom(rng)};
        try {
            states.push_back(
                solve_momentum_on_constraint(model, partial, 0).plus);
        } catch (const ConstraintInfeasible&) {
            if (++guard > 100 * count)
                throw std::runtime_error(
                    "could not draw on-constraint samples");
        }
    }
    return states;
}

GridWavefunction gaussian_packet(const Grid1D& g, double center,
                                 double width) {
    GridWavefunction psi = make_wavefunction_1d(g);
    for (int i = 0; i < g.n; ++i) {
        const double u = (g.point(i) - center) / width;
        psi.values[i] = std::exp(-0.5 * u * u);
    }
    const double nn = wavefunction_norm(psi);
    for (auto& v : psi.values) v /= nn;
    return psi;
}

struct TaskContext {
    const Scenario& sc;
    const MinisuperspaceModel& model;
    std::mt19937_64& rng;
    TaskReport& rep;
    std::string tag;  // per-task artifact prefix
};

void add_artifact(TaskContext& ctx, const std::string& file,
                  const std::string& content) {
    ctx.rep.artifacts.push_back(
        write_artifact(ctx.sc.output_dir, ctx.tag + "_" + file, content));
}

void run_trajectory(TaskContext& ctx, const json& t) {
    PhaseState partial;
    partial.q = t.at("q").get<std::vector<double>>();
    partial.p = {0.0, t.value("p1", 1.0)};
    MomentumRoots roots =
        solve_momentum_on_constraint(ctx.model, partial, 0);
    const PhaseState init =
        t.value("root", std::string("plus")) == "plus" ? roots.plus
                                                       : roots.minus;
    Trajectory traj = integrate_trajectory(
        ctx.model, init, t.value("lapse", 1.0), t.at("steps").get<int>(),
        t.at("dt").get<double>(), t.value("drift_bound", 1e-6));
    ctx.rep.residuals["constraint_drift"] = traj.max_constraint_drift;
    add_artifact(ctx, "trajectory.csv", trajectory_csv(ctx.model, traj));
}

void run_time_check(TaskContext& ctx, const json& t) {
    TimeCandidate cand = TimeCandidate::intrinsic(
        t.at("axis").get<int>(), t.at("sign").get<double>(),
        t.value("description", std::string("scenario clock")));
    auto states =
        sample_states(ctx.model, ctx.rng, t.value("samples", 200),
                      t.value("box", 1.0), t.value("p1_lo", 2.0),
                      t.value("p1_hi", 4.0));
    TimeVerdict verdict = intrinsic_time_check(ctx.model, cand, states,
                                               t.value("margin", 1e-6));
    ctx.rep.residuals["min_bracket"] = verdict.min_bracket;
    ctx.rep.residuals["global"] = verdict.global ? 1.0 : 0.0;
    add_artifact(ctx, "time_check.json", time_verdict_json(verdict, states));
    if (t.contains("expect_global") &&
        t["expect_global"].get<bool>() != verdict.global)
        throw std::runtime_error("TimeCheckMismatch: " + verdict.reason);
}

void run_wdw_modes(TaskContext& ctx, const json& t) {
    WdwCase wcase;
    WdwCaseParams params;
    if (ctx.sc.case_name == "xy") {
        params.zeta = constant(ctx.sc, "zeta");
        wcase = params.zeta > 0 ? WdwCase::zeta_pos : WdwCase::zeta_neg;
    } else {
        wcase = WdwCase::taub;
        params.cbar = constant(ctx.sc, "cbar");
        params.lambda = constant(ctx.sc, "lambda");
    }
    const double omega = t.at("omega").get<double>();
    ModeSpectrum modes;
    modes.omegas = {omega};
    for (auto it = t.at("families").begin(); it != t.at("families").end();
         ++it) {
        const auto pair = it.value().get<std::vector<double>>();
        modes.families[it.key()] = {cplx(pair.at(0), pair.at(1))};
    }
    modes.check();
    const Grid1D g0 = grid_from(t.at("grid0"));
    const Grid1D g1 = grid_from(t.at("grid1"));
    GridWavefunction psi = make_wavefunction_2d(g0, g1);
    for (int i = 0; i < g0.n; ++i)
        for (int j = 0; j < g1.n; ++j)
            psi.at(i, j) = wdw_mode_value(wcase, params, omega, modes, 0,
                                          g0.point(i), g1.point(j));
    WdwResidualReport rep = wdw_residual(ctx.model, psi);
    const double rel =
        rep.psi_norm > 0 ? rep.residual / rep.psi_norm : rep.residual;
    ctx.rep.residuals["residual_rel"] = rel;
    ctx.rep.residuals["convergence_order"] = rep.convergence_order;

    std::ostringstream heat;
    for (int i = 0; i < g0.n; ++i) {
        for (int j = 0; j < g1.n; ++j)
            heat << fmt(g0.point(i)) << ' ' << fmt(g1.point(j)) << ' '
                 << fmt(std::norm(psi.at(i, j))) << '\n';
        heat << '\n';
    }
    add_artifact(ctx, "psi_abs2.dat", heat.str());

    std::ostringstream conv;
    conv << "# slope = " << fmt(rep.convergence_order) << '\n'
         << fmt(g0.spacing()) << ' ' << fmt(rep.residual) << '\n'
         << fmt(2.0 * g0.spacing()) << ' ' << fmt(rep.coarse_residual)
         << '\n';
    add_artifact(ctx, "residual_convergence.dat", conv.str());

    const auto window =
        t.value("order_window", std::vector<double>{1.8, 2.2});
    if (t.value("check_order", true) &&
        (rep.convergence_order < window.at(0) ||
         rep.convergence_order > window.at(1)))
        throw std::runtime_error("ConvergenceOrderOut: order " +
                                 fmt(rep.convergence_order));
}

SheetHamiltonian sheet_for(TaskContext& ctx, const json& t) {
    auto samples = sample_states(ctx.model, ctx.rng, 32, t.value("box", 1.0),
                                 t.value("p1_lo", 2.0), t.value("p1_hi", 4.0));
    auto sheets = factorize_constraint(ctx.model, t.at("clock_axis").get<int>(),
                                       samples);
    return t.value("sheet", std::string("plus")) == "plus" ? sheets.first
                                                           : sheets.second;
}

void run_reduce(TaskContext& ctx, const json& t) {
    SheetHamiltonian sheet = sheet_for(ctx, t);
    SpectrumResult spec =
        reduced_spectrum(sheet, grid_from(t.at("grid")),
                         t.at("n_modes").get<int>(), t.value("clock_value", 0.0));
    ctx.rep.residuals["e_min"] = spec.energies.front();
    ctx.rep.residuals["e_max"] = spec.energies.back();
    std::ostringstream csv;
    csv << "mode,energy\n";
    for (size_t k = 0; k < spec.energies.size(); ++k)
        csv << k << ',' << fmt(spec.energies[k]) << '\n';
    add_artifact(ctx, "spectrum.csv", csv.str());
}

void run_evolve(TaskContext& ctx, const json& t) {
    SheetHamiltonian sheet = sheet_for(ctx, t);
    const Grid1D g = grid_from(t.at("grid"));
    const Grid1D clock = grid_from(t.at("clock"));
    GridWavefunction psi0 = gaussian_packet(
        g, t.value("center", 0.5 * (g.lo + g.hi)), t.value("width", 0.5));
    std::vector<double> ts(clock.n);
    for (int j = 0; j < clock.n; ++j) ts[j] = clock.point(j);
    auto slices = schrodinger_evolve(sheet, psi0, ts);
    double drift = 0.0;
    std::ostringstream csv;
    csv << "t,norm\n";
    for (int j = 0; j < clock.n; ++j) {
        const double nn = wavefunction_norm(slices[j]);
        drift = std::max(drift, std::abs(nn - 1.0));
        csv << fmt(ts[j]) << ',' << fmt(nn) << '\n';
    }
    const double span = std::max(clock.hi - clock.lo, 1.0);
    ctx.rep.residuals["norm_drift_per_time"] = drift / span;
    add_artifact(ctx, "evolve_norms.csv", csv.str());
    if (drift / span > t.value("tol", 1e-8))
        throw std::runtime_error("UnitarityDrift: " + fmt(drift / span));
}

void run_transform(TaskContext& ctx, const json& t) {
    const std::string kind = t.value("kernel", std::string("fourier_exchange"));
    const double lam = t.value("lambda_abs", 1.0);
    GeneratingKernel kernel =
        kind == "taub_sinh" ? make_taub_sinh_kernel(lam, t.value("sign", 1))
                            : make_fourier_exchange_kernel();
    const Grid1D gq = grid_from(t.at("grid_q"));
    const Grid1D gQ = grid_from(t.at("grid_Q"));
    GridWavefunction phi = gaussian_packet(
        gQ, t.value("center", 0.0), t.value("width", 0.8));
    TransformResult fwd = generalized_fourier(kernel, phi, gq);
    ctx.rep.residuals["window_sensitivity"] = fwd.window_sensitivity;
    std::ostringstream csv;
    csv << "q,abs_psi\n";
    for (int i = 0; i < gq.n; ++i)
        csv << fmt(gq.point(i)) << ','
            << fmt(std::abs(fwd.psi.values[i])) << '\n';
    add_artifact(ctx, "transform_abs.csv", csv.str());

    if (kind == "taub_sinh") {
        // the kernel must intertwine the two operator forms of the constraint
        OperatorSpec side_q{[lam](double q) {
                                return lam * lam * std::exp(-2.0 * q);
                            },
                            nullptr, [](double) { return 1.0; }};
        OperatorSpec side_Q{nullptr, nullptr, [](double) { return 1.0; }};
        const double cond =
            kernel_condition_residual(kernel, side_q, side_Q, gq, gQ);
        ctx.rep.residuals["condition_residual"] = cond;
        ctx.rep.residuals["quad_error"] = fwd.quad_error;
        if (cond > t.value("tol", 1e-6))
            throw std::runtime_error("CompatibilityResidual: " + fmt(cond));
        return;
    }
    TransformResult back = inverse_generalized_fourier(kernel, fwd.psi, gQ);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < gQ.n; ++i) {
        num += std::norm(back.psi.values[i] - phi.values[i]);
        den += std::norm(phi.values[i]);
    }
    const double roundtrip = std::sqrt(num / den);
    ctx.rep.residuals["roundtrip_error"] = roundtrip;
    ctx.rep.residuals["quad_error"] =
        std::max(fwd.quad_error, back.quad_error);
    if (roundtrip > t.value("tol", 1e-2))
        throw std::runtime_error("RoundTripError: " + fmt(roundtrip));
}

void run_symmetry(TaskContext& ctx, const json& t) {
    const double zeta = constant(ctx.sc, "zeta");
    if (zeta >= 0)
        throw std::runtime_error("symmetry task needs zeta < 0");
    const auto omegas = t.at("omegas").get<std::vector<double>>();
    const Grid1D g0 = grid_from(t.at("grid0"));
    const Grid1D g1 = grid_from(t.at("grid1"));
    const double root = std::sqrt(-zeta);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridWavefunction psi = make_wavefunction_2d(g0, g1);
    for (double omega : omegas) {
        const cplx c(u(ctx.rng), u(ctx.rng));
        std::vector<double> radial(g0.n);
        for (int i = 0; i < g0.n; ++i)
            radial[i] =
                mod_bessel_K_imag(omega, root * std::exp(g0.point(i)))
                    .value.real();
        for (int i = 0; i < g0.n; ++i)
            for (int j = 0; j < g1.n; ++j) {
                const cplx ph =
                    std::exp(cplx(0.0, -omega * g1.point(j)));
                psi.at(i, j) += 2.0 * (c * ph * radial[i]).real();
            }
    }
    KernelSplit split = kernel_split(psi, zeta, omegas);
    ctx.rep.residuals["reconstruction_error"] = split.reconstruction_error;
    std::ostringstream csv;
    csv << "part,norm\n";
    csv << "plus," << fmt(wavefunction_norm(split.plus_part)) << '\n';
    csv << "minus," << fmt(wavefunction_norm(split.minus_part)) << '\n';
    add_artifact(ctx, "split_norms.csv", csv.str());
    if (split.reconstruction_error > t.value("tol", 1e-8))
        throw std::runtime_error("SplitResidual: " +
                                 fmt(split.reconstruction_error));
}

void run_ordering(TaskContext& ctx, const json& t) {
    std::vector<std::function<cplx(double)>> fns;
    for (double c : {-0.8, 0.0, 0.9})
        fns.push_back([c](double q) {
            return std::exp(-(q - c) * (q - c)) * cplx(1.0, 0.3 * q);
        });
    OrderingReport rep =
        ordering_check(t.at("A").get<double>(), t.at("C").get<double>(),
                       t.at("b").get<double>(), grid_from(t.at("grid")), fns);
    ctx.rep.residuals["max_deviation"] = rep.max_deviation;
    ctx.rep.residuals["coeff_first_re"] = rep.coeff_first.real();
    ctx.rep.residuals["coeff_zero_re"] = rep.coeff_zero.real();
    ctx.rep.residuals["fit_residual"] = rep.fit_residual;
    json j;
    j["max_deviation"] = rep.max_deviation;
    j["coeff_first"] = {rep.coeff_first.real(), rep.coeff_first.imag()};
    j["coeff_zero"] = {rep.coeff_zero.real(), rep.coeff_zero.imag()};
    j["fit_residual"] = rep.fit_residual;
    add_artifact(ctx, "ordering.json", j.dump(2) + "\n");
}

void run_hj(TaskContext& ctx, const json& t) {
    const int eta = static_cast<int>(constant(ctx.sc, "eta"));
    const double m2 = constant(ctx.sc, "m2");
    HJSolution hj = hj_complete_solution(
        eta, m2, t.at("alpha").get<double>(), t.value("E", 0.0),
        t.value("branch", 1));
    PhaseState init;
    init.q = t.at("q").get<std::vector<double>>();
    init.p = {hj.branch * hj.root, hj.alpha};
    Trajectory traj = integrate_trajectory(
        ctx.model, init, t.value("lapse", 1.0), t.at("steps").get<int>(),
        t.at("dt").get<double>());
    DriftReport drift = conserved_observables(ctx.model, traj, hj);
    const SecondGenerator f = t.value("f", std::string("p1_tau")) == "none"
                                  ? SecondGenerator::none
                                  : SecondGenerator::p1_tau;
    ActionCheck check = action_endpoint_difference(ctx.model, traj, hj, f);
    ctx.rep.residuals["hj_residual"] =
        std::abs(hj_residual(hj, init.q[0], init.q[1]));
    ctx.rep.residuals["qbar_drift"] = drift.qbar_drift;
    ctx.rep.residuals["pbar_drift"] = drift.pbar_drift;
    ctx.rep.residuals["action_deviation"] = check.deviation;
    add_artifact(ctx, "hj_drift.json", drift_report_json(drift) + "\n");
    if (check.deviation > t.value("tol", 1e-8))
        throw std::runtime_error("ActionMismatch: " + fmt(check.deviation));
}

std::string taxonomy_name(const std::exception& e) {
    if (dynamic_cast<const ConstraintInfeasible*>(&e))
        return "ConstraintInfeasible";
    if (dynamic_cast<const DriftExceeded*>(&e)) return "DriftExceeded";
    if (dynamic_cast<const FactorizationUnsupported*>(&e))
        return "FactorizationUnsupported";
    if (dynamic_cast<const GridTooCoarse*>(&e)) return "GridTooCoarse";
    if (dynamic_cast<const NonPositiveSpectrum*>(&e))
        return "NonPositiveSpectrum";
    if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
    if (dynamic_cast<const BoundaryUndecided*>(&e))
        return "BoundaryUndecided";
    if (dynamic_cast<const NotASolution*>(&e)) return "NotASolution";
    if (dynamic_cast<const NoRealSolution*>(&e)) return "NoRealSolution";
    if (dynamic_cast<const UnsupportedRange*>(&e)) return "UnsupportedRange";
    if (dynamic_cast<const std::invalid_argument*>(&e))
        return "InvalidArgument";
    return "RuntimeError";
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    Scenario sc;
    try {
        sc.name = j.value("name", std::string("scenario"));
        if (!j.contains("case"))
            throw ScenarioValidationError("scenario needs a 'case'");
        sc.case_name = j["case"].get<std::string>();
        if (j.contains("constants"))
            for (auto it = j["constants"].begin(); it != j["constants"].end();
                 ++it)
                sc.constants[it.key()] = it.value().get<double>();
        if (j.contains("tasks"))
            for (const auto& t : j["tasks"]) sc.tasks.push_back(t);
        sc.output_dir = j.value("output_dir", "out/" + sc.name);
        sc.seed = j.value("seed", sc.seed);
    } catch (const ScenarioValidationError&) {
        throw;
    } catch (const json::exception& e) {
        throw ScenarioValidationError(e.what());
    }
    validate(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(e.what());
    }
    Scenario sc = scenario_from_json(j);
    if (const char* root = std::getenv("DLAB_OUTPUT_ROOT");
        root != nullptr &&
        std::filesystem::path(sc.output_dir).is_relative())
        sc.output_dir =
            (std::filesystem::path(root) / sc.output_dir).string();
    return sc;
}

bool RunReport::any_failed() const {
    for (const auto& t : tasks)
        if (t.status != "ok") return true;
    return false;
}

RunReport run_scenario(const Scenario& scenario) {
    RunReport report;
    report.scenario = scenario.name;
    report.seed = scenario.seed;
    report.output_dir = scenario.output_dir;
    const MinisuperspaceModel model = model_for(scenario);
    std::mt19937_64 rng(scenario.seed);
    int index = 0;
    for (const json& task : scenario.tasks) {
        TaskReport rep;
        rep.name = task["task"].get<std::string>();
        rep.status = "ok";
        TaskContext ctx{scenario, model, rng, rep,
                        "task" + std::to_string(index) + "_" + rep.name};
        const auto start = std::chrono::steady_clock::now();
        try {
            if (rep.name == "trajectory") run_trajectory(ctx, task);
            else if (rep.name == "time_check") run_time_check(ctx, task);
            else if (rep.name == "wdw_modes") run_wdw_modes(ctx, task);
            else if (rep.name == "reduce") run_reduce(ctx, task);
            else if (rep.name == "evolve") run_evolve(ctx, task);
            else if (rep.name == "transform") run_transform(ctx, task);
            else if (rep.name == "symmetry") run_symmetry(ctx, task);
            else if (rep.name == "ordering") run_ordering(ctx, task);
            else run_hj(ctx, task);
        } catch (const std::exception& e) {
            rep.status = "failed";
            const std::string what = e.what();
            // handwritten failures already lead with the taxonomy name
            rep.error = !what.empty() && what.find(':') != std::string::npos &&
                                std::isupper(static_cast<unsigned char>(
                                    what[0]))
                            ? what
                            : taxonomy_name(e) + ": " + what;
        }
        rep.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        report.tasks.push_back(std::move(rep));
        ++index;
    }
    return report;
}

std::string run_report_json(const RunReport& report, bool with_timing) {
    json j;
    j["scenario"] = report.scenario;
    j["seed"] = report.seed;
    j["output_dir"] = report.output_dir;
    j["tasks"] = json::array();
    for (const auto& t : report.tasks) {
        json tj;
        tj["name"] = t.name;
        tj["status"] = t.status;
        if (!t.error.empty()) tj["error"] = t.error;
        tj["residuals"] = t.residuals;
        if (with_timing) tj["wall_ms"] = t.wall_ms;
        tj["artifacts"] = t.artifacts;
        j["tasks"].push_back(tj);
    }
    return j.dump(2) + "\n";
}

namespace {

std::string stub(const std::string& data_file, const std::string& style) {
    std::ostringstream gp;
    gp << "set terminal pngcairo size 900,600\n"
       << "set output '" << std::filesystem::path(data_file).stem().string()
       << ".png'\n"
       << style << " '" << data_file << "'\n";
    return gp.str();
}

}  // namespace

std::vector<std::string> emit_plots(const RunReport& report) {
    std::vector<std::string> written;
    auto emit = [&](const std::string& src, const std::string& dat,
                    const std::string& style, const std::string& content) {
        const std::filesystem::path base =
            std::filesystem::path(src).parent_path();
        written.push_back(
            write_artifact(base.string(), dat, content));
        written.push_back(write_artifact(
            base.string(),
            std::filesystem::path(dat).stem().string() + ".gp",
            stub(dat, style)));
    };
    for (const auto& task : report.tasks) {
        for (const std::string& art : task.artifacts) {
            if (!std::filesystem::exists(art))
                throw std::runtime_error("missing artifact: " + art);
            const std::string file =
                std::filesystem::path(art).filename().string();
            std::ifstream in(art);
            std::string line;
            if (file.ends_with("trajectory.csv")) {
                // (tau, q0, q1) projection columns
                std::ostringstream dat;
                std::getline(in, line);  // header
                while (std::getline(in, line)) {
                    std::istringstream row(line);
                    std::string tau, q0, q1;
                    std::getline(row, tau, ',');
                    std::getline(row, q0, ',');
                    std::getline(row, q1, ',');
                    dat << tau << ' ' << q0 << ' ' << q1 << '\n';
                }
                emit(art,
                     std::filesystem::path(file).stem().string() +
                         "_proj.dat",
                     "plot", dat.str());
            } else if (file.ends_with("psi_abs2.dat")) {
                written.push_back(write_artifact(
                    std::filesystem::path(art).parent_path().string(),
                    std::filesystem::path(file).stem().string() + ".gp",
                    stub(file, "set pm3d map\nsplot")));
            } else if (file.ends_with("residual_convergence.dat")) {
                written.push_back(write_artifact(
                    std::filesystem::path(art).parent_path().string(),
                    std::filesystem::path(file).stem().string() + ".gp",
                    stub(file, "set logscale xy\nplot")));
            } else if (file.ends_with("evolve_norms.csv")) {
                std::ostringstream dat;
                std::getline(in, line);
                while (std::getline(in, line)) {
                    for (char& c : line)
                        if (c == ',') c = ' ';
                    dat << line << '\n';
                }
                emit(art,
                     std::filesystem::path(file).stem().string() + ".dat",
                     "plot", dat.str());
            }
        }
    }
    return written;
}

std::string bessel_table_csv(const std::vector<double>& omegas, double x_lo,
                             double x_hi, int n) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || n < 2)
        throw std::invalid_argument("need 0 < x_lo < x_hi and n >= 2");
    std::ostringstream csv;
    csv << "omega,x,K,I_re,I_im,J_re,J_im,N_re,N_im\n";
    for (double omega : omegas)
        for (int i = 0; i < n; ++i) {
            const double x =
                x_lo * std::pow(x_hi / x_lo, double(i) / (n - 1));
            const cplx K = mod_bessel_K_imag(omega, x).value;
            const cplx I = mod_bessel_I_imag(omega, x).value;
            const cplx J = bessel_J_imag(omega, x).value;
            const cplx N = bessel_N_imag(omega, x).value;
            csv << fmt(omega) << ',' << fmt(x) << ',' << fmt(K.real()) << ','
                << fmt(I.real()) << ',' << fmt(I.imag()) << ','
                << fmt(J.real()) << ',' << fmt(J.imag()) << ','
                << fmt(N.real()) << ',' << fmt(N.imag()) << '\n';
        }
    return csv.str();
}

}  // namespace dlab
