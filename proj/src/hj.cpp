#include "dlab/hj.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace dlab {

namespace {

void check_state_dim(const PhaseState& state) {
    if (state.q.size() != 2 || state.p.size() != 2)
        throw std::invalid_argument("expected a two-dimensional phase state");
}

// hj must describe the trajectory it is paired with: the generating function
// identities below hold only when (alpha, branch * root, E) match the
// (conserved) momenta and constraint value of the motion.
void check_match(const MinisuperspaceModel& model, const Trajectory& traj,
                 const HJSolution& hj) {
    if (traj.states.empty())
        throw std::invalid_argument("empty trajectory");
    const PhaseState& s0 = traj.states.front();
    check_state_dim(s0);
    const double scale =
        1.0 + std::abs(hj.alpha) + hj.root + std::abs(hj.E);
    if (std::abs(s0.p[1] - hj.alpha) > 1e-9 * scale ||
        std::abs(s0.p[0] - hj.branch * hj.root) > 1e-9 * scale ||
        std::abs(evaluate_constraint(model, s0) - hj.E) > 1e-9 * scale)
        throw std::invalid_argument(
            "trajectory momenta do not match the complete solution");
}

double f_value(SecondGenerator f, const PhaseState& state) {
    switch (f) {
        case SecondGenerator::none:
            return 0.0;
        case SecondGenerator::p1_tau:
            return state.p[1] * state.tau;
    }
    return 0.0;
}

}  // namespace

HJSolution hj_complete_solution(int eta, double m2, double alpha, double E,
                                int branch) {
    if (eta != 1 && eta != -1)
        throw std::invalid_argument("eta must be +-1");
    if (!(m2 > 0.0)) throw std::invalid_argument("m^2 must be positive");
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("branch must be +-1");
    const double disc = alpha * alpha + eta * m2 - E;
    if (disc < 0.0)
        throw NoRealSolution(
            "alpha^2 + eta m^2 - E < 0: no real characteristic", disc);
    HJSolution hj;
    hj.eta = eta;
    hj.m2 = m2;
    hj.alpha = alpha;
    hj.E = E;
    hj.branch = branch;
    hj.root = std::sqrt(disc);
    hj.degenerate = (hj.root == 0.0);
    return hj;
}

double hj_residual(const HJSolution& hj, double u, double v) {
    (void)u;
    (void)v;  // W is linear, so the residual is position independent
    return -hj.Wu() * hj.Wu() + hj.Wv() * hj.Wv() + hj.eta * hj.m2 - hj.E;
}

double qbar1(const PhaseState& state) {
    check_state_dim(state);
    if (state.p[0] == 0.0)
        throw std::invalid_argument("Qbar^1 is singular at p_u = 0");
    return state.q[1] + state.q[0] * state.p[1] / state.p[0];
}

double qbar0(const PhaseState& state) {
    check_state_dim(state);
    if (state.p[0] == 0.0)
        throw std::invalid_argument("Qbar^0 is singular at p_u = 0");
    return -state.q[0] / (2.0 * state.p[0]);
}

DriftReport conserved_observables(const MinisuperspaceModel& model,
                                  const Trajectory& traj,
                                  const HJSolution& hj) {
    check_match(model, traj, hj);
    if (hj.degenerate)
        throw std::invalid_argument(
            "degenerate solution: Qbar^1 is not defined at p_u = 0");
    const double q1_ref = qbar1(traj.states.front());
    const double p1_ref = traj.states.front().p[1];
    const double e_ref = evaluate_constraint(model, traj.states.front());
    DriftReport report;
    for (const PhaseState& s : traj.states) {
        report.qbar_drift =
            std::max(report.qbar_drift, std::abs(qbar1(s) - q1_ref));
        report.pbar_drift =
            std::max(report.pbar_drift, std::abs(s.p[1] - p1_ref));
        report.e_drift = std::max(
            report.e_drift, std::abs(evaluate_constraint(model, s) - e_ref));
    }
    return report;
}

std::string drift_report_json(const DriftReport& report) {
    nlohmann::json j;
    j["qbar_drift"] = report.qbar_drift;
    j["pbar_drift"] = report.pbar_drift;
    j["constraint_drift"] = report.e_drift;
    return j.dump(2);
}

ActionCheck action_endpoint_difference(const MinisuperspaceModel& model,
                                       const Trajectory& traj,
                                       const HJSolution& hj,
                                       SecondGenerator f) {
    check_match(model, traj, hj);
    if (hj.degenerate)
        throw std::invalid_argument(
            "degenerate solution: Qbar^1 is not defined at p_u = 0");
    const auto& st = traj.states;
    const int steps = static_cast<int>(st.size()) - 1;

    ActionCheck check;
    for (int k = 0; k < steps; ++k) {
        const PhaseState& a = st[k];
        const PhaseState& b = st[k + 1];
        const double dtau = b.tau - a.tau;
        const double lapse =
            k < static_cast<int>(traj.lapse_values.size())
                ? traj.lapse_values[k]
                : 1.0;
        // int p dq - int N H dtau, trapezoidal per step
        for (int i = 0; i < 2; ++i)
            check.s_original +=
                0.5 * (a.p[i] + b.p[i]) * (b.q[i] - a.q[i]);
        check.s_original -= lapse * 0.5 *
                            (evaluate_constraint(model, a) +
                             evaluate_constraint(model, b)) *
                            dtau;
        // int Pbar_1 dQbar^1 - int (df/dtau) dtau over the reduced pair
        check.s_new += 0.5 * (a.p[1] + b.p[1]) * (qbar1(b) - qbar1(a));
        if (f == SecondGenerator::p1_tau)
            check.s_new -= 0.5 * (a.p[1] + b.p[1]) * dtau;
    }

    auto bracket_at = [&](const PhaseState& s) {
        return qbar0(s) * evaluate_constraint(model, s) + qbar1(s) * s.p[1] -
               hj.W(s.q[0], s.q[1]) - f_value(f, s);
    };
    check.bracket = steps >= 1
                        ? bracket_at(st.back()) - bracket_at(st.front())
                        : 0.0;
    check.deviation =
        std::abs(check.s_new - check.s_original - check.bracket);
    return check;
}

}  // namespace dlab
