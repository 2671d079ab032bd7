#include "dlab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dlab {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// 16-point Gauss-Legendre on [-1, 1]
const double kGLx[8] = {0.0950125098376374, 0.2816035507792589,
                        0.4580167776572274, 0.6178762444026438,
                        0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGLw[8] = {0.1894506104550685, 0.1826034150449236,
                        0.1691565193950025, 0.1495959888165767,
                        0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

template <typename F>
cplx gl16(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    cplx sum = 0.0;
    for (int k = 0; k < 8; ++k) {
        sum += kGLw[k] * (f(c + r * kGLx[k]) + f(c - r * kGLx[k]));
    }
    return sum * r;
}

// phase derivative by differences (5-point, exact for cubic phases)
template <typename F>
double fd1(const F& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) /
           (12 * h);
}

template <typename F>
double fd2(const F& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
            f(x + 2 * h)) /
           (12 * h * h);
}

// uniform-grid Catmull-Rom interpolation, clamped at the ends
cplx interp_values(const Grid1D& g, const std::vector<cplx>& v, double x) {
    const double u = (x - g.lo) / g.spacing();
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, g.n - 2);
    const double t = u - i;
    auto at = [&](int j) { return v[std::clamp(j, 0, g.n - 1)]; };
    const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return 0.5 * (2.0 * p1 + (p2 - p0) * t +
                  (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                  (3.0 * p1 - p0 - 3.0 * p2 + p3) * t * t * t);
}

double taper(double x, double lo, double hi, double fraction) {
    const double a = fraction * (hi - lo);
    if (a <= 0) return 1.0;
    if (x <= lo || x >= hi) return 0.0;
    if (x < lo + a) return 0.5 * (1 - std::cos(M_PI * (x - lo) / a));
    if (x > hi - a) return 0.5 * (1 - std::cos(M_PI * (hi - x) / a));
    return 1.0;
}

// Panel layout driven only by the kernel phase and the sampling grid, so
// the quadrature stays exactly linear in the transformed function.
void split_panels(const std::function<double(double)>& rate, double a,
                  double b, double width_cap, int budget,
                  std::vector<std::pair<double, double>>& out) {
    const double w = b - a;
    const double r = std::max(
        {rate(a), rate(0.5 * (a + b)), rate(b)});
    if ((r * w > 2.0 || w > width_cap) && w > 1e-9 &&
        static_cast<int>(out.size()) + 2 <= budget) {
        split_panels(rate, a, a + 0.5 * w, width_cap, budget, out);
        split_panels(rate, a + 0.5 * w, b, width_cap, budget, out);
        return;
    }
    if (r * w > 4.0 || static_cast<int>(out.size()) >= budget)
        throw QuadratureError(
            "panel budget exhausted before the kernel phase was resolved",
            r * w);
    out.emplace_back(a, b);
}

struct RowResult {
    cplx value = 0.0;
    double estimate = 0.0;
};

// one output row: integral of e^{i sign F1} * weight * interp over [lo, hi]
RowResult integrate_row(const std::function<double(double)>& phase,
                        const std::function<cplx(double)>& amplitude,
                        double lo, double hi, double grid_h, int phase_sign,
                        const TransformOptions& opt, double taper_lo,
                        double taper_hi) {
    auto rate = [&](double x) { return std::abs(fd1(phase, x, 1e-3)); };
    std::vector<std::pair<double, double>> panels;
    split_panels(rate, lo, hi, 8 * grid_h, opt.max_panels, panels);
    auto f = [&](double x) {
        return std::exp(kI * double(phase_sign) * phase(x)) * amplitude(x) *
               taper(x, taper_lo, taper_hi, opt.taper_fraction);
    };
    RowResult row;
    for (const auto& [a, b] : panels) {
        const cplx whole = gl16(f, a, b);
        const cplx halves =
            gl16(f, a, 0.5 * (a + b)) + gl16(f, 0.5 * (a + b), b);
        row.value += halves;
        row.estimate += std::abs(whole - halves);
    }
    return row;
}

struct CoreSpec {
    // phase and weight as functions of (output point, integration variable)
    std::function<double(double, double)> phase;
    std::function<double(double, double)> weight;  // may be null (== 1)
    int phase_sign = +1;
};

TransformResult transform_core(const CoreSpec& spec, const Grid1D& out_grid,
                               const Grid1D& in_grid,
                               const std::vector<cplx>& in_values,
                               double normalization,
                               const TransformOptions& opt) {
    auto run = [&](double lo, double hi) {
        GridWavefunction out = make_wavefunction_1d(out_grid);
        double worst = 0.0;
        for (int i = 0; i < out_grid.n; ++i) {
            const double y = out_grid.point(i);
            auto phase = [&](double x) { return spec.phase(y, x); };
            auto amp = [&](double x) {
                cplx v = interp_values(in_grid, in_values, x);
                if (spec.weight) v *= spec.weight(y, x);
                return v;
            };
            RowResult row = integrate_row(phase, amp, lo, hi,
                                          in_grid.spacing(), spec.phase_sign,
                                          opt, lo, hi);
            out.values[i] = normalization * row.value;
            worst = std::max(worst, std::abs(normalization) * row.estimate);
        }
        return std::make_pair(out, worst);
    };

    auto [full, err] = run(in_grid.lo, in_grid.hi);
    double maxabs = 0.0;
    for (const auto& v : full.values) maxabs = std::max(maxabs, std::abs(v));
    if (err > 1e-4 * (1.0 + maxabs))
        throw QuadratureError("quadrature estimate above tolerance", err);

    // window sensitivity: redo on the central half window
    const double quarter = 0.25 * (in_grid.hi - in_grid.lo);
    auto [half, herr] = run(in_grid.lo + quarter, in_grid.hi - quarter);
    (void)herr;
    double dnorm = 0.0, fnorm = 0.0;
    for (size_t i = 0; i < full.values.size(); ++i) {
        dnorm += std::norm(full.values[i] - half.values[i]);
        fnorm += std::norm(full.values[i]);
    }
    TransformResult res;
    res.psi = std::move(full);
    res.quad_error = err;
    res.window_sensitivity =
        fnorm > 0 ? std::sqrt(dnorm / fnorm) : 0.0;
    return res;
}

}  // namespace

GeneratingKernel make_fourier_exchange_kernel() {
    GeneratingKernel k;
    k.name = "fourier_exchange";
    k.F1 = [](double q, double Q) { return q * Q; };
    k.mixed_second = [](double, double) { return 1.0; };
    k.F1_complex = [](double q, cplx Q) { return q * Q; };
    k.normalization = 1.0 / std::sqrt(2 * M_PI);
    return k;
}

GeneratingKernel make_taub_sinh_kernel(double lambda_abs, int sign) {
    if (!(lambda_abs > 0) || (sign != 1 && sign != -1))
        throw std::invalid_argument("need |lambda| > 0 and sign = +-1");
    GeneratingKernel k;
    k.name = "taub_sinh";
    const double s = sign;
    k.F1 = [lambda_abs, s](double q, double Q) {
        return s * lambda_abs * std::exp(-q) * std::sinh(Q);
    };
    k.mixed_second = [lambda_abs, s](double q, double Q) {
        return -s * lambda_abs * std::exp(-q) * std::cosh(Q);
    };
    k.F1_complex = [lambda_abs, s](double q, cplx Q) {
        return s * lambda_abs * std::exp(-q) * std::sinh(Q);
    };
    k.normalization = 1.0 / (2 * M_PI);
    return k;
}

double kernel_consistency_residual(const GeneratingKernel& kernel,
                                   const Grid1D& q_grid,
                                   const Grid1D& Q_grid) {
    double worst = 0.0;
    auto probe = [&](double q, double Q, double h) {
        return (kernel.F1(q + h, Q + h) - kernel.F1(q + h, Q - h) -
                kernel.F1(q - h, Q + h) + kernel.F1(q - h, Q - h)) /
               (4 * h * h);
    };
    for (int i = 0; i < q_grid.n; ++i)
        for (int j = 0; j < Q_grid.n; ++j) {
            const double q = q_grid.point(i), Q = Q_grid.point(j);
            const double h = 1e-3;
            // one Richardson step kills the h^2 truncation term
            const double est =
                (4 * probe(q, Q, h) - probe(q, Q, 2 * h)) / 3.0;
            worst = std::max(worst, std::abs(est - kernel.mixed_second(q, Q)));
        }
    return worst;
}

double kernel_condition_residual(const GeneratingKernel& kernel,
                                 const OperatorSpec& H_q,
                                 const OperatorSpec& H_Q,
                                 const Grid1D& q_grid, const Grid1D& Q_grid) {
    const double h = 1e-2;
    double worst = 0.0;
    for (int i = 0; i < q_grid.n; ++i)
        for (int j = 0; j < Q_grid.n; ++j) {
            const double q = q_grid.point(i), Q = Q_grid.point(j);
            auto fq = [&](double x) { return kernel.F1(x, Q); };
            auto fQ = [&](double x) { return kernel.F1(q, x); };
            const double F1q = fd1(fq, q, h), F1qq = fd2(fq, q, h);
            const double F1Q = fd1(fQ, Q, h), F1QQ = fd2(fQ, Q, h);
            // symbols of H(-i d_q) and H(+i d_Q) acting on e^{iF1}
            cplx lhs = 0.0, rhs = 0.0;
            if (H_q.c2) lhs += H_q.c2(q) * (F1q * F1q - kI * F1qq);
            if (H_q.c1) lhs += H_q.c1(q) * F1q;
            if (H_q.c0) lhs += H_q.c0(q);
            if (H_Q.c2) rhs += H_Q.c2(Q) * (F1Q * F1Q - kI * F1QQ);
            if (H_Q.c1) rhs -= H_Q.c1(Q) * F1Q;
            if (H_Q.c0) rhs += H_Q.c0(Q);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

TransformResult generalized_fourier(const GeneratingKernel& kernel,
                                    const GridWavefunction& phi,
                                    const Grid1D& q_grid,
                                    const TransformOptions& opt) {
    phi.check_shape();
    if (phi.grids.size() != 1)
        throw std::invalid_argument("transform input must be 1D");
    CoreSpec spec;
    spec.phase = kernel.F1;
    spec.phase_sign = +1;
    return transform_core(spec, q_grid, phi.grids[0], phi.values,
                          kernel.normalization, opt);
}

TransformResult inverse_generalized_fourier(const GeneratingKernel& kernel,
                                            const GridWavefunction& psi,
                                            const Grid1D& Q_grid,
                                            const TransformOptions& opt) {
    psi.check_shape();
    if (psi.grids.size() != 1)
        throw std::invalid_argument("transform input must be 1D");
    CoreSpec spec;
    // integration runs over q for each output Q
    spec.phase = [&kernel](double Q, double q) { return kernel.F1(q, Q); };
    spec.weight = [&kernel](double Q, double q) {
        return std::abs(kernel.mixed_second(q, Q));
    };
    spec.phase_sign = -1;
    return transform_core(spec, Q_grid, psi.grids[0], psi.values,
                          kernel.normalization, opt);
}

GridWavefunction contour_generalized_fourier(
    const GeneratingKernel& kernel, const std::function<cplx(cplx)>& phi,
    const Grid1D& q_grid, double tail, double tol) {
    if (!kernel.F1_complex)
        throw std::invalid_argument(
            "kernel has no analytic continuation for contour quadrature");
    GridWavefunction out = make_wavefunction_1d(q_grid);
    double worst = 0.0;
    for (int i = 0; i < q_grid.n; ++i) {
        const double q = q_grid.point(i);
        auto g = [&](cplx s) {
            return std::exp(kI * kernel.F1_complex(q, s)) * phi(s);
        };
        // legs: s = x - 3 i pi /2 (x: tail -> 0), s = i y
        // (y: -3 pi/2 -> pi/2), s = x + i pi/2 (x: 0 -> tail)
        cplx total = 0.0;
        double est = 0.0;
        auto add_leg = [&](const std::function<cplx(double)>& path, cplx ds,
                           double a, double b) {
            auto f = [&](double u) { return g(path(u)) * ds; };
            const int panels =
                std::max(8, static_cast<int>(std::ceil((b - a) / 0.25)));
            for (int k = 0; k < panels; ++k) {
                const double pa = a + (b - a) * k / panels;
                const double pb = a + (b - a) * (k + 1) / panels;
                const cplx whole = gl16(f, pa, pb);
                const cplx halves = gl16(f, pa, 0.5 * (pa + pb)) +
                                    gl16(f, 0.5 * (pa + pb), pb);
                total += halves;
                est += std::abs(whole - halves);
            }
        };
        add_leg([&](double x) { return cplx(-x, -1.5 * M_PI); }, cplx(-1, 0),
                -tail, 0.0);
        add_leg([&](double y) { return cplx(0, y); }, cplx(0, 1),
                -1.5 * M_PI, 0.5 * M_PI);
        add_leg([&](double x) { return cplx(x, 0.5 * M_PI); }, cplx(1, 0),
                0.0, tail);
        out.values[i] = kernel.normalization * total;
        worst = std::max(worst, std::abs(kernel.normalization) * est);
    }
    double maxabs = 0.0;
    for (const auto& v : out.values) maxabs = std::max(maxabs, std::abs(v));
    if (worst > std::max(tol * 100, 1e-6 * (1 + maxabs)))
        throw QuadratureError("contour quadrature estimate above tolerance",
                              worst);
    return out;
}

}  // namespace dlab
