#ifndef DLAB_MODEL_HPP
#define DLAB_MODEL_HPP

#include <stdexcept>
#include <string>
#include <vector>

// Minisuperspace models with a diagonal supermetric and a sum of exponential
// potential terms,
//
//   H = sum_i s_i p_i^2 + sum_t A_t e^{a_t . q},
//
// together with classical trajectory integration (fixed-step symplectic
// splitting in an arbitrary constant lapse).

namespace dlab {

struct ExpPotentialTerm {
    double coefficient = 0.0;        // the prefactor A
    std::vector<double> exponents;   // the vector a in A e^{a.q}
};

struct MinisuperspaceModel {
    int dimension = 0;
    std::vector<double> metric_signs;  // +-1 per momentum; exactly one -1
    std::vector<ExpPotentialTerm> potential;
    std::vector<std::string> coordinate_labels;

    MinisuperspaceModel() = default;  // empty shell, filled by factorization
    MinisuperspaceModel(std::vector<double> signs,
                        std::vector<ExpPotentialTerm> terms,
                        std::vector<std::string> labels = {});
};

struct PhaseState {
    std::vector<double> q;
    std::vector<double> p;
    double tau = 0.0;
};

struct Trajectory {
    std::vector<PhaseState> states;
    std::vector<double> lapse_values;  // N per step, strictly positive
    double max_constraint_drift = 0.0;
};

class ConstraintInfeasible : public std::runtime_error {
  public:
    ConstraintInfeasible(const std::string& what, double discriminant)
        : std::runtime_error(what), discriminant(discriminant) {}
    double discriminant;
};

class DriftExceeded : public std::runtime_error {
  public:
    DriftExceeded(const std::string& what, int step, double drift)
        : std::runtime_error(what), step(step), drift(drift) {}
    int step;
    double drift;
};

double evaluate_constraint(const MinisuperspaceModel& model,
                           const PhaseState& state);

// dq_i = lapse * 2 s_i p_i ; dp_i = -lapse * dV/dq_i.
void hamilton_rhs(const MinisuperspaceModel& model, const PhaseState& state,
                  double lapse, std::vector<double>& dq,
                  std::vector<double>& dp);

// Solves the constraint for the momentum on `axis`, all other entries of
// `partial_state` known.  Both quadratic roots are returned (equal when the
// root is degenerate).
struct MomentumRoots {
    PhaseState plus;   // nonnegative root on the axis
    PhaseState minus;  // nonpositive root
};
MomentumRoots solve_momentum_on_constraint(const MinisuperspaceModel& model,
                                           const PhaseState& partial_state,
                                           int axis);

// Fixed-step Stoermer-Verlet (kick-drift-kick) in the constant lapse gauge.
Trajectory integrate_trajectory(const MinisuperspaceModel& model,
                                const PhaseState& initial, double lapse,
                                int steps, double dt,
                                double drift_bound = 1e-6);

Trajectory motion_reverse_trajectory(const Trajectory& traj);

// CSV with columns tau, q0.., p0.., H_residual.
std::string trajectory_csv(const MinisuperspaceModel& model,
                           const Trajectory& traj);

}  // namespace dlab

#endif
