#ifndef DLAB_CANONICAL_HPP
#define DLAB_CANONICAL_HPP

#include "dlab/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

// Poisson brackets, global-phase-time verdicts, and the named canonical maps
// (linear (x,y) mixing, the sinh generating-function transform, and the
// hyperbolic (u,v) embedding), plus constraint factorization into sheets.

namespace dlab {

using PhaseFunction = std::function<double(const PhaseState&)>;

class SingularTransform : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class FactorizationUnsupported : public std::runtime_error {
  public:
    FactorizationUnsupported(const std::string& what, PhaseState witness)
        : std::runtime_error(what), witness(std::move(witness)) {}
    PhaseState witness;
};

// Canonical bracket [f, g] by central differences with one Richardson step.
double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g,
                       const PhaseState& state);

struct TimeCandidate {
    enum class Kind { intrinsic, extrinsic };
    Kind kind = Kind::intrinsic;
    // intrinsic: t = sign * q[axis]
    int axis = 0;
    double sign = 1.0;
    // extrinsic: closed-form map (q, p) -> t
    PhaseFunction map;
    std::string description;

    static TimeCandidate intrinsic(int axis, double sign,
                                   std::string description = "");
    static TimeCandidate extrinsic(PhaseFunction map,
                                   std::string description = "");
    double value(const PhaseState& state) const;
};

struct TimeVerdict {
    bool global = false;
    std::string reason;
    std::optional<PhaseState> witness;  // failing sample, when not global
    double min_bracket = 0.0;
    double max_bracket = 0.0;
};

// global iff [t, H] > margin on every sample and (for intrinsic candidates)
// the potential has one sign over the sampled region.
TimeVerdict intrinsic_time_check(const MinisuperspaceModel& model,
                                 const TimeCandidate& candidate,
                                 const std::vector<PhaseState>& samples,
                                 double margin = 1e-6);

std::string time_verdict_json(const TimeVerdict& verdict,
                              const std::vector<PhaseState>& samples);

struct CanonicalMap {
    std::string name;  // xy_linear | sinh_generating | uv_embedding
    std::function<PhaseState(const PhaseState&)> forward;
    std::function<PhaseState(const PhaseState&)> inverse;
};

// x = (a q0 + b q1)/2, y = (b q0 + a q1)/2 with the induced momentum map.
PhaseState xy_transform(double a, double b, const PhaseState& state);
CanonicalMap make_xy_map(double a, double b);

// (phi, p_phi) -> (s, p_s) on axis 1; axis 0 passes through.
PhaseState sinh_generating_transform(double lambda_abs, int sign,
                                     const PhaseState& state);
CanonicalMap make_sinh_map(double lambda_abs, int sign);

// Point transformation (q0, q1) -> (u, v) with alpha = sqrt|A|.
PhaseState uv_transform(double a, double b, double A, const PhaseState& state);
CanonicalMap make_uv_map(double a, double b, double A);

// One factor p0 +- h of the factorized constraint, with its clock.
struct SheetHamiltonian {
    int sign = +1;       // +1: K+ = p_c + h ; -1: K- = p_c - h
    int clock_axis = 0;  // the factored momentum axis q^0
    int clock_sign = -1; // t = clock_sign * q^0 (K+ => -q^0, K- => +q^0)
    bool time_dependent = false;
    MinisuperspaceModel model;

    // h^2 = -(H - s_c p_c^2)/s_c evaluated at the state (p on clock axis
    // ignored)
    double h_squared(const PhaseState& state) const;
    double h(const PhaseState& state) const;
    // potential part of h^2 on the reduced (single remaining) axis, for 2D
    // models
    double reduced_potential(double q_other, double clock_value) const;
};

std::pair<SheetHamiltonian, SheetHamiltonian> factorize_constraint(
    const MinisuperspaceModel& model, int clock_axis,
    const std::vector<PhaseState>& domain_samples);

}  // namespace dlab

#endif
