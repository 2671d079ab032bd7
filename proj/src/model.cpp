#include "dlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace dlab {
namespace {

void check_dimension(const MinisuperspaceModel& model,
                     const PhaseState& state) {
    if (static_cast<int>(state.q.size()) != model.dimension ||
        static_cast<int>(state.p.size()) != model.dimension)
        throw std::invalid_argument("state dimension does not match model");
}

double potential_value(const MinisuperspaceModel& model,
                       const std::vector<double>& q) {
    double v = 0.0;
    for (const auto& term : model.potential) {
        double dot = 0.0;
        for (int i = 0; i < model.dimension; ++i) dot += term.exponents[i] * q[i];
        v += term.coefficient * std::exp(dot);
    }
    return v;
}

void potential_gradient(const MinisuperspaceModel& model,
                        const std::vector<double>& q,
                        std::vector<double>& grad) {
    grad.assign(model.dimension, 0.0);
    for (const auto& term : model.potential) {
        double dot = 0.0;
        for (int i = 0; i < model.dimension; ++i) dot += term.exponents[i] * q[i];
        const double val = term.coefficient * std::exp(dot);
        for (int i = 0; i < model.dimension; ++i)
            grad[i] += term.exponents[i] * val;
    }
}

}  // namespace

MinisuperspaceModel::MinisuperspaceModel(std::vector<double> signs,
                                         std::vector<ExpPotentialTerm> terms,
                                         std::vector<std::string> labels)
    : dimension(static_cast<int>(signs.size())),
      metric_signs(std::move(signs)),
      coordinate_labels(std::move(labels)) {
    if (dimension < 2)
        throw std::invalid_argument("model dimension must be >= 2");
    int minus = 0;
    for (double s : metric_signs) {
        if (s != 1.0 && s != -1.0)
            throw std::invalid_argument("metric signs must be +-1");
        if (s == -1.0) ++minus;
    }
    if (minus != 1)
        throw std::invalid_argument("exactly one metric sign must be -1");
    for (auto& t : terms) {
        if (!std::isfinite(t.coefficient))
            throw std::invalid_argument("potential coefficient must be finite");
        if (static_cast<int>(t.exponents.size()) != dimension)
            throw std::invalid_argument("exponent vector length mismatch");
        if (t.coefficient != 0.0) potential.push_back(std::move(t));
    }
    if (coordinate_labels.empty())
        for (int i = 0; i < dimension; ++i)
            coordinate_labels.push_back("q" + std::to_string(i));
}

double evaluate_constraint(const MinisuperspaceModel& model,
                           const PhaseState& state) {
    check_dimension(model, state);
    double h = 0.0;
    for (int i = 0; i < model.dimension; ++i)
        h += model.metric_signs[i] * state.p[i] * state.p[i];
    return h + potential_value(model, state.q);
}

void hamilton_rhs(const MinisuperspaceModel& model, const PhaseState& state,
                  double lapse, std::vector<double>& dq,
                  std::vector<double>& dp) {
    check_dimension(model, state);
    if (!(lapse > 0.0))
        throw std::invalid_argument("lapse must be positive");
    dq.resize(model.dimension);
    for (int i = 0; i < model.dimension; ++i)
        dq[i] = lapse * 2.0 * model.metric_signs[i] * state.p[i];
    potential_gradient(model, state.q, dp);
    for (double& g : dp) g *= -lapse;
}

MomentumRoots solve_momentum_on_constraint(const MinisuperspaceModel& model,
                                           const PhaseState& partial_state,
                                           int axis) {
    check_dimension(model, partial_state);
    if (axis < 0 || axis >= model.dimension)
        throw std::invalid_argument("axis out of range");
    double rest = potential_value(model, partial_state.q);
    for (int i = 0; i < model.dimension; ++i)
        if (i != axis)
            rest += model.metric_signs[i] * partial_state.p[i] *
                    partial_state.p[i];
    // s_axis p^2 + rest = 0  =>  p^2 = -rest / s_axis
    const double p2 = -rest / model.metric_signs[axis];
    if (p2 < 0.0)
        throw ConstraintInfeasible(
            "no real momentum root on the constraint surface", p2);
    const double root = std::sqrt(p2);
    MomentumRoots out{partial_state, partial_state};
    out.plus.p[axis] = root;
    out.minus.p[axis] = -root;
    return out;
}

Trajectory integrate_trajectory(const MinisuperspaceModel& model,
                                const PhaseState& initial, double lapse,
                                int steps, double dt, double drift_bound) {
    check_dimension(model, initial);
    if (!(lapse > 0.0))
        throw std::invalid_argument("lapse must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    // Clean starts must sit on the constraint to 1e-10; re-integration of a
    // motion-reversed trajectory may carry the previous run's drift, which
    // the configured bound already declares acceptable.
    const double h0 = evaluate_constraint(model, initial);
    if (std::abs(h0) >= std::max(1e-10, drift_bound))
        throw std::invalid_argument(
            "initial state violates the constraint");

    Trajectory traj;
    traj.states.reserve(steps + 1);
    traj.states.push_back(initial);
    traj.lapse_values.assign(steps, lapse);

    std::vector<double> q = initial.q, p = initial.p, grad;
    const double half = 0.5 * dt * lapse;
    for (int step = 0; step < steps; ++step) {
        potential_gradient(model, q, grad);
        for (int i = 0; i < model.dimension; ++i) p[i] -= half * grad[i];
        for (int i = 0; i < model.dimension; ++i)
            q[i] += dt * lapse * 2.0 * model.metric_signs[i] * p[i];
        potential_gradient(model, q, grad);
        for (int i = 0; i < model.dimension; ++i) p[i] -= half * grad[i];

        PhaseState s{q, p, initial.tau + (step + 1) * dt};
        const double drift = std::abs(evaluate_constraint(model, s) - h0);
        if (drift > traj.max_constraint_drift) traj.max_constraint_drift = drift;
        if (drift > drift_bound)
            throw DriftExceeded("constraint drift exceeded configured bound",
                                step + 1, drift);
        traj.states.push_back(std::move(s));
    }
    return traj;
}

Trajectory motion_reverse_trajectory(const Trajectory& traj) {
    if (traj.states.empty())
        throw std::invalid_argument("cannot reverse an empty trajectory");
    Trajectory out;
    out.max_constraint_drift = traj.max_constraint_drift;
    const double tau0 = traj.states.front().tau;
    const double tau1 = traj.states.back().tau;
    out.states.reserve(traj.states.size());
    for (auto it = traj.states.rbegin(); it != traj.states.rend(); ++it) {
        PhaseState s = *it;
        for (double& pi : s.p) pi = -pi;
        s.tau = tau0 + (tau1 - it->tau);
        out.states.push_back(std::move(s));
    }
    out.lapse_values.assign(traj.lapse_values.rbegin(),
                            traj.lapse_values.rend());
    return out;
}

std::string trajectory_csv(const MinisuperspaceModel& model,
                           const Trajectory& traj) {
    std::string out = "tau";
    for (int i = 0; i < model.dimension; ++i)
        out += ",q" + std::to_string(i);
    for (int i = 0; i < model.dimension; ++i)
        out += ",p" + std::to_string(i);
    out += ",H_residual\n";
    char buf[64];
    for (const auto& s : traj.states) {
        std::snprintf(buf, sizeof buf, "%.17g", s.tau);
        out += buf;
        for (double v : s.q) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        for (double v : s.p) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g",
                      evaluate_constraint(model, s));
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace dlab
