#include "dlab/canonical.hpp"

#include "json.hpp"

#include <cmath>

namespace dlab {
namespace {

// 4th-order partial derivative of f along coordinate (which=0) or momentum
// (which=1) axis i, with one Richardson step on top.
double partial(const PhaseFunction& f, const PhaseState& state, int which,
               int i) {
    auto probe = [&](double h) {
        PhaseState s = state;
        double* slot = which == 0 ? &s.q[i] : &s.p[i];
        const double c = *slot;
        auto at = [&](double d) {
            *slot = c + d;
            double v = f(s);
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite probe in poisson_bracket");
            return v;
        };
        return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    };
    const double h = 1e-3 * std::max(1.0, std::abs(which == 0 ? state.q[i]
                                                             : state.p[i]));
    const double d1 = probe(h), d2 = probe(h / 2);
    return (16 * d2 - d1) / 15;
}

}  // namespace

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g,
                       const PhaseState& state) {
    const int n = static_cast<int>(state.q.size());
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += partial(f, state, 0, i) * partial(g, state, 1, i) -
               partial(f, state, 1, i) * partial(g, state, 0, i);
    return sum;
}

TimeCandidate TimeCandidate::intrinsic(int axis, double sign,
                                       std::string description) {
    TimeCandidate c;
    c.kind = Kind::intrinsic;
    c.axis = axis;
    c.sign = sign;
    c.description = std::move(description);
    return c;
}

TimeCandidate TimeCandidate::extrinsic(PhaseFunction map,
                                       std::string description) {
    TimeCandidate c;
    c.kind = Kind::extrinsic;
    c.map = std::move(map);
    c.description = std::move(description);
    return c;
}

double TimeCandidate::value(const PhaseState& state) const {
    if (kind == Kind::intrinsic) return sign * state.q[axis];
    return map(state);
}

TimeVerdict intrinsic_time_check(const MinisuperspaceModel& model,
                                 const TimeCandidate& candidate,
                                 const std::vector<PhaseState>& samples,
                                 double margin) {
    if (samples.empty())
        throw std::invalid_argument("intrinsic_time_check needs samples");
    for (const auto& s : samples)
        if (std::abs(evaluate_constraint(model, s)) >= 1e-8)
            throw std::invalid_argument(
                "sample state is off the constraint surface");

    TimeVerdict v;
    v.global = true;
    PhaseFunction t = [&candidate](const PhaseState& s) {
        return candidate.value(s);
    };
    PhaseFunction H = [&model](const PhaseState& s) {
        return evaluate_constraint(model, s);
    };
    bool first = true;
    for (const auto& s : samples) {
        const double br = poisson_bracket(t, H, s);
        if (first) {
            v.min_bracket = v.max_bracket = br;
            first = false;
        } else {
            v.min_bracket = std::min(v.min_bracket, br);
            v.max_bracket = std::max(v.max_bracket, br);
        }
        if (!(br > margin) && v.global) {
            v.global = false;
            v.reason = "[t, H] not positive and bounded away from zero";
            v.witness = s;
        }
    }
    if (v.global && candidate.kind == TimeCandidate::Kind::intrinsic &&
        !model.potential.empty()) {
        // Sign-definiteness of the potential over the sampled region.
        int sign = 0;
        for (const auto& s : samples) {
            double pot = 0.0;
            for (const auto& term : model.potential) {
                double dot = 0.0;
                for (size_t i = 0; i < s.q.size(); ++i)
                    dot += term.exponents[i] * s.q[i];
                pot += term.coefficient * std::exp(dot);
            }
            const int ps = pot > 0 ? 1 : (pot < 0 ? -1 : 0);
            if (sign == 0) sign = ps;
            if (ps == 0 || ps != sign) {
                v.global = false;
                v.reason = "potential not sign-definite over sampled region";
                v.witness = s;
                break;
            }
        }
    }
    if (v.global) v.reason = "bracket positive and bounded away from zero";
    return v;
}

std::string time_verdict_json(const TimeVerdict& verdict,
                              const std::vector<PhaseState>& samples) {
    nlohmann::json j;
    j["global"] = verdict.global;
    j["reason"] = verdict.reason;
    j["min_bracket"] = verdict.min_bracket;
    j["max_bracket"] = verdict.max_bracket;
    auto state_json = [](const PhaseState& s) {
        return nlohmann::json{{"q", s.q}, {"p", s.p}, {"tau", s.tau}};
    };
    if (verdict.witness) j["witness"] = state_json(*verdict.witness);
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples) j["samples"].push_back(state_json(s));
    return j.dump(2);
}

PhaseState xy_transform(double a, double b, const PhaseState& state) {
    if (a == b || a == -b)
        throw SingularTransform("xy_transform requires a != +-b");
    if (state.q.size() != 2)
        throw std::invalid_argument("xy_transform needs a 2D state");
    const double d = a * a - b * b;
    PhaseState out = state;
    out.q[0] = 0.5 * (a * state.q[0] + b * state.q[1]);
    out.q[1] = 0.5 * (b * state.q[0] + a * state.q[1]);
    out.p[0] = (2.0 / d) * (a * state.p[0] - b * state.p[1]);
    out.p[1] = (2.0 / d) * (-b * state.p[0] + a * state.p[1]);
    return out;
}

CanonicalMap make_xy_map(double a, double b) {
    if (a == b || a == -b)
        throw SingularTransform("xy map requires a != +-b");
    CanonicalMap m;
    m.name = "xy_linear";
    m.forward = [a, b](const PhaseState& s) { return xy_transform(a, b, s); };
    // The inverse of the symmetric mixing is the same mixing with the
    // inverse 2x2 matrix: q = M Q with M = [[a,b],[b,a]]/2.
    const double d = a * a - b * b;
    m.inverse = [a, b, d](const PhaseState& s) {
        PhaseState out = s;
        out.q[0] = (2.0 / d) * (a * s.q[0] - b * s.q[1]);
        out.q[1] = (2.0 / d) * (-b * s.q[0] + a * s.q[1]);
        out.p[0] = 0.5 * (a * s.p[0] + b * s.p[1]);
        out.p[1] = 0.5 * (b * s.p[0] + a * s.p[1]);
        return out;
    };
    return m;
}

PhaseState sinh_generating_transform(double lambda_abs, int sign,
                                     const PhaseState& state) {
    if (!(lambda_abs > 0))
        throw std::invalid_argument("sinh transform requires |lambda| > 0");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +-1");
    if (state.q.size() != 2)
        throw std::invalid_argument("sinh transform needs a 2D state");
    const double phi = state.q[1], pphi = state.p[1];
    PhaseState out = state;
    const double s = sign * std::asinh(pphi * std::exp(phi) / lambda_abs);
    out.q[1] = s;
    out.p[1] = sign * lambda_abs * std::exp(-phi) * std::cosh(s);
    return out;
}

CanonicalMap make_sinh_map(double lambda_abs, int sign) {
    if (!(lambda_abs > 0))
        throw std::invalid_argument("sinh map requires |lambda| > 0");
    CanonicalMap m;
    m.name = "sinh_generating";
    m.forward = [lambda_abs, sign](const PhaseState& st) {
        return sinh_generating_transform(lambda_abs, sign, st);
    };
    m.inverse = [lambda_abs, sign](const PhaseState& st) {
        const double s = st.q[1], ps = st.p[1];
        if (!(sign * ps > 0))
            throw std::invalid_argument(
                "inverse sinh transform requires sign * p_s > 0");
        PhaseState out = st;
        // sign * lambda e^{-phi} = p_s / cosh s
        out.q[1] = -std::log(sign * ps / (lambda_abs * std::cosh(s)));
        out.p[1] = ps * std::tanh(s);
        return out;
    };
    return m;
}

PhaseState uv_transform(double a, double b, double A, const PhaseState& state) {
    if (a == b || a == -b)
        throw SingularTransform("uv_transform requires a != +-b");
    if (A == 0.0) throw SingularTransform("uv_transform requires A != 0");
    if (state.q.size() != 2)
        throw std::invalid_argument("uv_transform needs a 2D state");
    const double alpha = std::sqrt(std::abs(A));
    const double radial = std::exp(0.5 * (a * state.q[0] + b * state.q[1]));
    const double theta = 0.5 * (b * state.q[0] + a * state.q[1]);
    const double u = alpha * radial * std::cosh(theta);
    const double v = alpha * radial * std::sinh(theta);
    // Point transformation: p_new = J^{-1} p_old with the symmetric Jacobian
    // J = d(u,v)/d(q0,q1) = [[a u + b v, b u + a v], [a v + b u, b v + a u]]/2.
    const double j00 = 0.5 * (a * u + b * v);
    const double j01 = 0.5 * (b * u + a * v);
    const double det = j00 * j00 - j01 * j01;
    PhaseState out = state;
    out.q[0] = u;
    out.q[1] = v;
    out.p[0] = (j00 * state.p[0] - j01 * state.p[1]) / det;
    out.p[1] = (-j01 * state.p[0] + j00 * state.p[1]) / det;
    return out;
}

CanonicalMap make_uv_map(double a, double b, double A) {
    if (a == b || a == -b) throw SingularTransform("uv map requires a != +-b");
    if (A == 0.0) throw SingularTransform("uv map requires A != 0");
    CanonicalMap m;
    m.name = "uv_embedding";
    m.forward = [a, b, A](const PhaseState& s) {
        return uv_transform(a, b, A, s);
    };
    m.inverse = [a, b, A](const PhaseState& st) {
        const double alpha = std::sqrt(std::abs(A));
        const double u = st.q[0], v = st.q[1];
        const double r2 = u * u - v * v;  // alpha^2 e^{a q0 + b q1}
        if (!(r2 > 0))
            throw std::invalid_argument("inverse uv map requires u^2 > v^2");
        const double rad_log = std::log(r2 / (alpha * alpha));  // a q0 + b q1
        const double theta = std::atanh(v / u);                 // (b q0 + a q1)/2
        const double d = a * a - b * b;
        PhaseState out = st;
        out.q[0] = (a * rad_log - 2.0 * b * theta) / d;
        out.q[1] = (-b * rad_log + 2.0 * a * theta) / d;
        const double j00 = 0.5 * (a * u + b * v);
        const double j01 = 0.5 * (b * u + a * v);
        out.p[0] = j00 * st.p[0] + j01 * st.p[1];
        out.p[1] = j01 * st.p[0] + j00 * st.p[1];
        return out;
    };
    return m;
}

double SheetHamiltonian::h_squared(const PhaseState& state) const {
    const double sc = model.metric_signs[clock_axis];
    double rest = 0.0;
    for (int i = 0; i < model.dimension; ++i)
        if (i != clock_axis)
            rest += model.metric_signs[i] * state.p[i] * state.p[i];
    for (const auto& term : model.potential) {
        double dot = 0.0;
        for (int i = 0; i < model.dimension; ++i)
            dot += term.exponents[i] * state.q[i];
        rest += term.coefficient * std::exp(dot);
    }
    return -rest / sc;
}

double SheetHamiltonian::h(const PhaseState& state) const {
    const double h2 = h_squared(state);
    if (h2 < 0)
        throw FactorizationUnsupported("h^2 negative at evaluation point",
                                       state);
    return std::sqrt(h2);
}

double SheetHamiltonian::reduced_potential(double q_other,
                                           double clock_value) const {
    if (model.dimension != 2)
        throw std::invalid_argument("reduced_potential is for 2D models");
    PhaseState s;
    s.q = {0, 0};
    s.p = {0, 0};
    s.q[clock_axis] = clock_value;
    s.q[1 - clock_axis] = q_other;
    return h_squared(s);
}

std::pair<SheetHamiltonian, SheetHamiltonian> factorize_constraint(
    const MinisuperspaceModel& model, int clock_axis,
    const std::vector<PhaseState>& domain_samples) {
    if (clock_axis < 0 || clock_axis >= model.dimension)
        throw std::invalid_argument("clock axis out of range");
    SheetHamiltonian plus;
    plus.sign = +1;
    plus.clock_axis = clock_axis;
    plus.clock_sign = -1;
    plus.model = model;
    for (const auto& term : model.potential)
        if (term.exponents[clock_axis] != 0.0) plus.time_dependent = true;
    for (const auto& s : domain_samples)
        if (plus.h_squared(s) <= 0)
            throw FactorizationUnsupported(
                "h^2 is not positive over the sampled domain", s);
    SheetHamiltonian minus = plus;
    minus.sign = -1;
    minus.clock_sign = +1;
    return {plus, minus};
}

}  // namespace dlab
