#include "dlab/bessel.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dlab {
namespace {

using f128 = __float128;

constexpr double kEpsQuad = 1.93e-34;  // 2^-112
constexpr double kEpsDouble = 2.3e-16;
// Relative accuracy of one series evaluation including the log-gamma in the
// leading term (|log Gamma| ~ 1e2, so ~1e2 quad ulps).
constexpr double kEpsSeries = 1e-31;

// Minimal complex type over __float128; std::complex<__float128> has no
// transcendental support in libstdc++.
struct QC {
    f128 re{0}, im{0};
};

QC operator+(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
QC operator-(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
QC operator*(QC a, QC b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QC operator*(f128 s, QC a) { return {s * a.re, s * a.im}; }
QC operator/(QC a, QC b) {
    f128 d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
f128 qabs(QC a) { return sqrtq(a.re * a.re + a.im * a.im); }
QC qconj(QC a) { return {a.re, -a.im}; }
QC qexp(QC a) {
    f128 r = expq(a.re);
    return {r * cosq(a.im), r * sinq(a.im)};
}
QC qlog(QC a) { return {logq(qabs(a)), atan2q(a.im, a.re)}; }
QC qpow(f128 base, QC expo) {
    // base > 0
    f128 l = logq(base);
    return qexp({expo.re * l, expo.im * l});
}

std::complex<double> to_cd(QC a) {
    return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

// ---------------------------------------------------------------------------
// Gamma(z) for complex z via the Stirling (Bernoulli) asymptotic series with
// an upward recurrence shift.  Unlike Spouge/Lanczos there is no coefficient
// cancellation, so the full quad precision survives; that matters because a
// relative error in Gamma(1+i omega) rotates the whole I series sum, and the
// K route below reads off a tiny imaginary part of a huge sum.

// B_{2n} / (2n (2n-1)), n = 1..15.
const std::array<f128, 15>& stirling_coeffs() {
    static const std::array<f128, 15> c = {
        1.0q / 12, -1.0q / 360, 1.0q / 1260, -1.0q / 1680, 1.0q / 1188,
        -691.0q / 360360, 1.0q / 156, -3617.0q / 122400, 43867.0q / 244188,
        -174611.0q / 125400, 77683.0q / 5796, -236364091.0q / 1506960,
        657931.0q / 300, -3392780147.0q / 93960, 1723168255201.0q / 2492028};
    return c;
}

QC gamma_q(QC z);

// Gamma(z+1) for Re z >= -0.5.
QC gamma_plus1_q(QC z) {
    // Shift w = z+1 upward until |w| >= 45; there the truncated Stirling
    // series for log Gamma is accurate to ~1e-41 absolute.
    QC w = z + QC{1, 0};
    QC shift_prod{1, 0};
    while (qabs(w) < 45.0q) {
        shift_prod = shift_prod * w;
        w = w + QC{1, 0};
    }
    QC lw = qlog(w);
    QC lg = (w - QC{0.5q, 0}) * lw - w +
            QC{0.5q * logq(2.0q * M_PIq), 0};
    QC w2 = w * w;
    QC rp = QC{1, 0} / w;  // w^{-(2n-1)}
    for (const f128& c : stirling_coeffs()) {
        lg = lg + c * rp;
        rp = rp / w2;
    }
    return qexp(lg) / shift_prod;
}

QC gamma_q(QC z) {
    if (z.re >= 0.5q) return gamma_plus1_q(z - QC{1, 0});
    // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    QC pz{M_PIq * z.re, M_PIq * z.im};
    QC s{sinq(pz.re) * coshq(pz.im), cosq(pz.re) * sinhq(pz.im)};
    return QC{M_PIq, 0} / (s * gamma_q(QC{1, 0} - z));
}

// ---------------------------------------------------------------------------
// Power series for I_nu(x) and J_nu(x), complex order, x > 0.
//
//   I_nu(x) = sum_k (x/2)^{nu+2k} / (k! Gamma(nu+k+1))
//   J_nu(x) = same with (-1)^k
//
// Returns the sum; *cancellation receives max|term| / |sum|, which scaled by
// the quad epsilon bounds the relative rounding error.

QC bessel_series_q(QC nu, double x, bool alternating, double* cancellation) {
    const f128 xq = x;
    const f128 q = xq * xq / 4.0q;
    QC term = qpow(xq / 2.0q, nu) / gamma_plus1_q(nu);
    QC sum = term;
    f128 max_mag = qabs(term);
    for (int k = 0; k < 500; ++k) {
        QC denom = QC{static_cast<f128>(k + 1), 0} *
                   (nu + QC{static_cast<f128>(k + 1), 0});
        term = QC{alternating ? -q : q, 0} / denom * term;
        sum = sum + term;
        f128 m = qabs(term);
        if (m > max_mag) max_mag = m;
        if (k > x && m < qabs(sum) * 1e-38q) break;
    }
    if (cancellation) {
        f128 s = qabs(sum);
        *cancellation = (s > 0) ? static_cast<double>(max_mag / s) : 1.0;
    }
    return sum;
}

void check_range(double omega, double x) {
    if (x <= 0.0) throw std::domain_error("bessel: argument must be positive");
    if (std::abs(omega) > kMaxImagOrder || x > kMaxBesselArg)
        throw UnsupportedRange("bessel: omega or x outside supported range");
}

// ---------------------------------------------------------------------------
// Quadrature route for K: K_{i omega}(x) = int_0^inf e^{-x cosh t} cos(omega t) dt.
// Composite Gauss-Legendre; the integrand is entire in t, so panel refinement
// converges fast once oscillation and the e^{-x cosh t} scale are resolved.

struct GL16 {
    std::array<double, 8> node, weight;
};

const GL16& gl16() {
    static const GL16 g = {
        {{0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
          0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
          0.94457502307323258, 0.98940093499164993}},
        {{0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
          0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
          0.06225352393864789, 0.02715245941175409}}};
    return g;
}

double k_quadrature(double omega, double x, double panel_width, double* scale) {
    // Quad-precision accumulation: the integrand at large omega oscillates
    // and cancels down by up to ~e^{pi omega / 2}, which would eat most of a
    // double significand.
    const double t_max = std::acosh(1500.0 / x);
    const int n_panels =
        std::max(4, static_cast<int>(std::ceil(t_max / panel_width)));
    const f128 w = static_cast<f128>(t_max) / n_panels;
    const auto& g = gl16();
    f128 total = 0;
    f128 max_abs = 0;
    for (int p = 0; p < n_panels; ++p) {
        const f128 mid = (static_cast<f128>(p) + 0.5q) * w;
        f128 acc = 0;
        for (int j = 0; j < 8; ++j) {
            for (int sgn : {-1, 1}) {
                const f128 t = mid + sgn * 0.5q * w * static_cast<f128>(g.node[j]);
                const f128 f = expq(-static_cast<f128>(x) * coshq(t)) *
                               cosq(static_cast<f128>(omega) * t);
                acc += static_cast<f128>(g.weight[j]) * f;
                if (fabsq(f) > max_abs) max_abs = fabsq(f);
            }
        }
        total += 0.5q * w * acc;
    }
    if (scale) *scale = static_cast<double>(max_abs) * t_max;
    return static_cast<double>(total);
}

}  // namespace

std::complex<double> gamma_one_plus_imag(double omega) {
    return to_cd(gamma_plus1_q(QC{0, static_cast<f128>(omega)}));
}

ImagOrderResult mod_bessel_I_imag(double omega, double x) {
    check_range(omega, x);
    double cancel = 1.0;
    QC v = bessel_series_q(QC{0, static_cast<f128>(omega)}, x, false, &cancel);
    ImagOrderResult r;
    r.value = to_cd(v);
    r.est_error = std::abs(r.value) * ((cancel + 1.0) * kEpsSeries + kEpsDouble);
    return r;
}

ImagOrderResult mod_bessel_K_imag(double omega, double x) {
    check_range(omega, x);
    const double aomega = std::abs(omega);
    ImagOrderResult r;
    if (aomega >= 0.5 && 2.0 * x < M_PI * aomega / 2.0 + 47.0) {
        // K_{i w} = -pi Im(I_{i w}) / sinh(pi w).  The imaginary part of I is
        // smaller than |I| by up to ~e^{2x - pi w / 2}; the route boundary
        // keeps that factor below ~e^47 so quad precision still leaves
        // ~1e-13 relative.
        double cancel = 1.0;
        QC I = bessel_series_q(QC{0, static_cast<f128>(aomega)}, x, false,
                               &cancel);
        f128 k = -M_PIq * I.im / sinhq(M_PIq * static_cast<f128>(aomega));
        r.value = static_cast<double>(k);
        const double i_mag = static_cast<double>(qabs(I));
        const double abs_floor =
            i_mag * (cancel + 1.0) * kEpsSeries * M_PI /
            std::sinh(M_PI * aomega);
        r.est_error = abs_floor + std::abs(r.value.real()) * kEpsDouble;
    } else {
        double scale = 0.0;
        const double coarse = k_quadrature(aomega, x, 0.35, nullptr);
        const double fine = k_quadrature(aomega, x, 0.175, &scale);
        r.value = fine;
        r.est_error = std::abs(fine - coarse) + scale * kEpsQuad +
                      std::abs(fine) * kEpsDouble;
    }
    return r;
}

ImagOrderResult bessel_J_imag(double omega, double x) {
    check_range(omega, x);
    double cancel = 1.0;
    QC v = bessel_series_q(QC{0, static_cast<f128>(omega)}, x, true, &cancel);
    ImagOrderResult r;
    r.value = to_cd(v);
    r.est_error = std::abs(r.value) * kEpsDouble +
                  static_cast<double>(qabs(v)) * (cancel + 1.0) * kEpsSeries;
    return r;
}

ImagOrderResult bessel_N_imag(double omega, double x) {
    check_range(omega, x);
    if (std::abs(omega) < 1e-12) {
        // Y_0 via the log series, quad precision.
        const f128 xq = x;
        const f128 q = xq * xq / 4.0q;
        f128 j_term = 1, j_sum = 1;        // J_0
        f128 h_term = 0, h_sum = 0;        // sum (-1)^{k+1} H_k q^k/(k!)^2
        f128 harmonic = 0;
        f128 max_mag = 1;
        for (int k = 1; k < 500; ++k) {
            j_term *= -q / (static_cast<f128>(k) * k);
            harmonic += 1.0q / k;
            h_term = -j_term * harmonic;  // (-1)^{k+1} H_k q^k/(k!)^2
            j_sum += j_term;
            h_sum += h_term;
            f128 m = fabsq(j_term);
            if (m > max_mag) max_mag = m;
            if (k > x && m < 1e-38q * (fabsq(j_sum) + 1.0q)) break;
        }
        const f128 euler_gamma =
            0.57721566490153286060651209008240243104q;
        f128 y0 = 2.0q / M_PIq * ((logq(xq / 2.0q) + euler_gamma) * j_sum + h_sum);
        ImagOrderResult r;
        r.value = static_cast<double>(y0);
        const double cancel =
            static_cast<double>(max_mag / (fabsq(y0) + 1e-300q));
        r.est_error = std::abs(r.value) * (kEpsDouble + cancel * kEpsQuad);
        return r;
    }
    // N_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi) with nu = i omega:
    // cos -> cosh(omega pi), sin -> i sinh(omega pi), J_{-i w} = conj(J_{i w}).
    double cancel = 1.0;
    QC J = bessel_series_q(QC{0, static_cast<f128>(omega)}, x, true, &cancel);
    const f128 wpi = M_PIq * static_cast<f128>(omega);
    QC num = coshq(wpi) * J - qconj(J);
    QC den{0, sinhq(wpi)};
    QC N = num / den;
    ImagOrderResult r;
    r.value = to_cd(N);
    const double j_mag = static_cast<double>(qabs(J));
    const double n_mag = std::abs(r.value) + 1e-300;
    r.est_error =
        n_mag * kEpsDouble +
        j_mag * (cancel + 1.0) * kEpsSeries *
            static_cast<double>(coshq(wpi) / fabsq(sinhq(wpi))) ;
    return r;
}

}  // namespace dlab
