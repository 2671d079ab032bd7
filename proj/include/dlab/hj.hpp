#ifndef DLAB_HJ_HPP
#define DLAB_HJ_HPP

#include "dlab/model.hpp"

#include <stdexcept>
#include <string>

// Hamilton-Jacobi deparametrization of the constant-potential constraint
// H = -p_u^2 + p_v^2 + eta m^2, with the complete solution
// W = alpha v +- sqrt(alpha^2 + eta m^2 - E) u and the conserved pair
// (Qbar^1, Pbar_1) it generates.

namespace dlab {

class NoRealSolution : public std::runtime_error {
  public:
    NoRealSolution(const std::string& what, double discriminant)
        : std::runtime_error(what), discriminant(discriminant) {}
    double discriminant;
};

struct HJSolution {
    double eta = 1.0;  // +-1
    double m2 = 0.0;
    double alpha = 0.0;
    double E = 0.0;
    int branch = +1;    // sign of the u term
    double root = 0.0;  // sqrt(alpha^2 + eta m2 - E)
    bool degenerate = false;  // root == 0: W loses its u dependence

    double W(double u, double v) const { return alpha * v + branch * root * u; }
    double Wu() const { return branch * root; }
    double Wv() const { return alpha; }
};

HJSolution hj_complete_solution(int eta, double m2, double alpha, double E,
                                int branch = +1);

// -Wu^2 + Wv^2 + eta m^2 - E at a point (identically zero for valid W)
double hj_residual(const HJSolution& hj, double u, double v);

// observables generated by W as phase functions:
//   Pbar_1 = p_v,  Qbar^1 = v + u p_v / p_u,
//   Pbar_0 = H,    Qbar^0 = -u / (2 p_u)   (the gauge clock)
double qbar1(const PhaseState& state);
double qbar0(const PhaseState& state);

struct DriftReport {
    double qbar_drift = 0.0;  // max |Qbar^1(t) - Qbar^1(0)|
    double pbar_drift = 0.0;  // max |Pbar_1(t) - Pbar_1(0)|
    double e_drift = 0.0;     // max |H(t) - H(0)|
};

DriftReport conserved_observables(const MinisuperspaceModel& model,
                                  const Trajectory& traj,
                                  const HJSolution& hj);

std::string drift_report_json(const DriftReport& report);

enum class SecondGenerator { none, p1_tau };  // f = 0 or f = Pbar_1 tau

struct ActionCheck {
    double s_original = 0.0;  // int p dq - int N H dtau
    double s_new = 0.0;       // int Pbar_1 dQbar^1 - int (df/dtau) dtau
    double bracket = 0.0;     // [Qbar Pbar - W - f] between the endpoints
    double deviation = 0.0;   // |(s_new - s_original) - bracket|
};

ActionCheck action_endpoint_difference(
    const MinisuperspaceModel& model, const Trajectory& traj,
    const HJSolution& hj, SecondGenerator f = SecondGenerator::p1_tau);

}  // namespace dlab

#endif
