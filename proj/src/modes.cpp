#include "dlab/modes.hpp"

#include "dlab/bessel.hpp"

#include <cmath>

namespace dlab {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

}  // namespace

void ModeSpectrum::check() const {
    for (const auto& [name, family] : families)
        if (family.size() != omegas.size())
            throw std::invalid_argument("mode family '" + name +
                                        "' not sampled on the omega grid");
}

cplx ModeSpectrum::coeff(const std::string& family, size_t idx) const {
    auto it = families.find(family);
    if (it == families.end()) return 0.0;
    if (idx >= it->second.size())
        throw std::out_of_range("mode index out of range");
    return it->second[idx];
}

cplx wdw_mode_value(WdwCase wcase, const WdwCaseParams& params, double omega,
                    const ModeSpectrum& modes, size_t idx, double q0,
                    double q1) {
    modes.check();
    if (idx >= modes.omegas.size())
        throw std::out_of_range("mode index out of range");
    if (std::abs(modes.omegas[idx] - omega) > 1e-12 * (1 + std::abs(omega)))
        throw std::invalid_argument("omega does not match the spectrum entry");

    switch (wcase) {
        case WdwCase::zeta_pos: {
            if (params.zeta <= 0)
                throw std::invalid_argument("zeta_pos needs zeta > 0");
            const double arg = std::sqrt(params.zeta) * std::exp(q0);
            const cplx ep = std::exp(kI * omega * q1);
            const cplx em = std::conj(ep);
            const cplx ya = modes.coeff("a+", idx) * ep +
                            modes.coeff("a-", idx) * em;
            const cplx yb = modes.coeff("b+", idx) * ep +
                            modes.coeff("b-", idx) * em;
            cplx out = 0.0;
            if (ya != 0.0) out += ya * bessel_J_imag(omega, arg).value;
            if (yb != 0.0) out += yb * bessel_N_imag(omega, arg).value;
            return out;
        }
        case WdwCase::zeta_neg: {
            if (params.zeta >= 0)
                throw std::invalid_argument("zeta_neg needs zeta < 0");
            const double arg = std::sqrt(-params.zeta) * std::exp(q0);
            const cplx ep = std::exp(kI * omega * q1);
            const cplx em = std::conj(ep);
            const cplx ya = modes.coeff("a+", idx) * ep +
                            modes.coeff("a-", idx) * em;
            const cplx yb = modes.coeff("b+", idx) * ep +
                            modes.coeff("b-", idx) * em;
            cplx out = 0.0;
            if (ya != 0.0) out += ya * mod_bessel_K_imag(omega, arg).value;
            if (yb != 0.0) out += yb * mod_bessel_I_imag(omega, arg).value;
            return out;
        }
        case WdwCase::taub: {
            if (!(params.cbar < 0) || params.lambda == 0)
                throw std::invalid_argument(
                    "taub case needs cbar < 0 and lambda != 0");
            const double zphi = std::abs(params.lambda) * std::exp(-q1);
            const double zomg =
                std::sqrt(std::abs(2 * params.cbar)) / 3.0 * std::exp(3 * q0);
            const cplx at = modes.coeff("atilde", idx);
            const cplx cc = modes.coeff("c", idx);
            const cplx dd = modes.coeff("d", idx);
            cplx out = 0.0;
            if (at != 0.0)
                out += at * mod_bessel_I_imag(omega, zphi).value *
                       mod_bessel_K_imag(omega / 3.0, zomg).value;
            if (cc != 0.0)
                out += cc * mod_bessel_K_imag(omega, zphi).value *
                       mod_bessel_K_imag(omega / 3.0, zomg).value;
            if (dd != 0.0)
                out += dd * mod_bessel_I_imag(omega, zphi).value *
                       mod_bessel_I_imag(omega / 3.0, zomg).value;
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

double potential_at(const MinisuperspaceModel& model, double q0, double q1) {
    double v = 0.0;
    for (const auto& term : model.potential)
        v += term.coefficient *
             std::exp(term.exponents[0] * q0 + term.exponents[1] * q1);
    return v;
}

}  // namespace

WdwResidualReport wdw_residual(const MinisuperspaceModel& model,
                               const GridWavefunction& psi) {
    psi.check_shape();
    if (model.dimension != 2 || psi.grids.size() != 2)
        throw std::invalid_argument("wdw_residual works on 2D models");
    const Grid1D& g0 = psi.grids[0];
    const Grid1D& g1 = psi.grids[1];
    const double h0 = g0.spacing(), h1 = g1.spacing();

    // potential must vary slowly over a cell
    if (!model.potential.empty()) {
        double vmax = 0.0, gradmax = 0.0;
        for (int i = 0; i < g0.n; ++i)
            for (int j = 0; j < g1.n; ++j) {
                const double q0 = g0.point(i), q1 = g1.point(j);
                vmax = std::max(vmax, std::abs(potential_at(model, q0, q1)));
                double d0 = 0.0, d1 = 0.0;
                for (const auto& term : model.potential) {
                    const double t =
                        term.coefficient *
                        std::exp(term.exponents[0] * q0 +
                                 term.exponents[1] * q1);
                    d0 += term.exponents[0] * t;
                    d1 += term.exponents[1] * t;
                }
                gradmax = std::max(
                    gradmax, std::max(std::abs(d0) * h0, std::abs(d1) * h1));
            }
        if (vmax > 0 && gradmax / vmax >= 0.5)
            throw GridTooCoarse(
                "potential varies too fast per cell: |dV| h / |V| = " +
                std::to_string(gradmax / vmax));
    }

    const double s0 = model.metric_signs[0], s1 = model.metric_signs[1];
    // residual of (-s0 d0^2 - s1 d1^2 + V) psi with a given stride
    auto residual_for = [&](int stride, double& norm_out) {
        const double hh0 = h0 * stride, hh1 = h1 * stride;
        double sum = 0.0, nsum = 0.0;
        int count = 0;
        for (int i = stride; i + stride < g0.n; i += stride)
            for (int j = stride; j + stride < g1.n; j += stride) {
                const cplx d2_0 = (psi.at(i + stride, j) - 2.0 * psi.at(i, j) +
                                   psi.at(i - stride, j)) /
                                  (hh0 * hh0);
                const cplx d2_1 = (psi.at(i, j + stride) - 2.0 * psi.at(i, j) +
                                   psi.at(i, j - stride)) /
                                  (hh1 * hh1);
                const double v =
                    potential_at(model, g0.point(i), g1.point(j));
                const cplx r = -s0 * d2_0 - s1 * d2_1 + v * psi.at(i, j);
                sum += std::norm(r);
                nsum += std::norm(psi.at(i, j));
                ++count;
            }
        (void)count;
        norm_out = std::sqrt(nsum * hh0 * hh1);
        return std::sqrt(sum * hh0 * hh1);
    };

    WdwResidualReport rep;
    double npsi = 0.0, ncoarse = 0.0;
    rep.residual = residual_for(1, npsi);
    rep.coarse_residual = residual_for(2, ncoarse);
    rep.psi_norm = npsi;
    rep.convergence_order =
        (rep.residual > 1e-300 && rep.coarse_residual > 1e-300)
            ? std::log2(rep.coarse_residual / rep.residual)
            : 0.0;
    return rep;
}

namespace {

BoundaryFit fit_boundary(
    double omega,
    const std::function<cplx(double, double)>& profile,
    const Grid1D& region) {
    const int i0 = (3 * region.n) / 4;
    const int m = region.n - i0;
    std::vector<double> q(m);
    std::vector<cplx> f(m);
    double fnorm2 = 0.0;
    for (int i = 0; i < m; ++i) {
        q[i] = region.point(i0 + i);
        f[i] = profile(omega, q[i]);
        fnorm2 += std::norm(f[i]);
    }
    BoundaryFit fit;
    fit.omega = omega;
    if (fnorm2 == 0.0) {  // zero profile: trivially single-frequency
        fit.single_residual = 0.0;
        fit.two_residual = 0.0;
        return fit;
    }
    // single model c e^{-i w q}: unit-modulus basis, plain average
    cplx c = 0.0;
    for (int i = 0; i < m; ++i) c += std::exp(kI * omega * q[i]) * f[i];
    c /= double(m);
    double r1 = 0.0;
    for (int i = 0; i < m; ++i)
        r1 += std::norm(f[i] - c * std::exp(-kI * omega * q[i]));
    fit.single_coeff = c;
    fit.single_residual = std::sqrt(r1 / fnorm2);

    if (std::abs(omega) < 1e-12) {  // degenerate basis: two == single
        fit.two_pos = 0.0;
        fit.two_neg = c;
        fit.two_residual = fit.single_residual;
        return fit;
    }
    // two-frequency model a e^{+i w q} + b e^{-i w q}, 2x2 normal equations
    cplx g_pm = 0.0, r_p = 0.0, r_m = 0.0;
    for (int i = 0; i < m; ++i) {
        const cplx ep = std::exp(kI * omega * q[i]);
        g_pm += std::conj(ep) * std::conj(ep);  // <e+, e->
        r_p += std::conj(ep) * f[i];
        r_m += ep * f[i];
    }
    const double mm = double(m);
    const cplx det = mm * mm - g_pm * std::conj(g_pm);
    const cplx a = (mm * r_p - g_pm * r_m) / det;
    const cplx b = (mm * r_m - std::conj(g_pm) * r_p) / det;
    double r2 = 0.0;
    for (int i = 0; i < m; ++i) {
        const cplx ep = std::exp(kI * omega * q[i]);
        r2 += std::norm(f[i] - a * ep - b * std::conj(ep));
    }
    fit.two_pos = a;
    fit.two_neg = b;
    fit.two_residual = std::sqrt(r2 / fnorm2);
    return fit;
}

}  // namespace

std::pair<ModeSpectrum, std::vector<BoundaryFit>> boundary_select(
    const ModeSpectrum& modes,
    const std::function<cplx(double, double)>& profile,
    const Grid1D& region) {
    modes.check();
    std::vector<BoundaryFit> fits;
    std::vector<size_t> keep;
    for (size_t k = 0; k < modes.omegas.size(); ++k) {
        BoundaryFit fit = fit_boundary(modes.omegas[k], profile, region);
        if (fit.single_residual < 1e-3) {
            fit.accepted = true;
        } else if (fit.two_residual <= 0.1 * fit.single_residual) {
            fit.accepted = false;
        } else {
            throw BoundaryUndecided(
                "asymptotic fit undecided at omega = " +
                    std::to_string(fit.omega) + ": single residual " +
                    std::to_string(fit.single_residual) + ", two-frequency " +
                    std::to_string(fit.two_residual),
                fit);
        }
        if (fit.accepted) keep.push_back(k);
        fits.push_back(std::move(fit));
    }
    ModeSpectrum filtered;
    for (const auto& [name, family] : modes.families)
        filtered.families[name] = {};
    for (size_t k : keep) {
        filtered.omegas.push_back(modes.omegas[k]);
        for (const auto& [name, family] : modes.families)
            filtered.families[name].push_back(family[k]);
    }
    return {filtered, fits};
}

}  // namespace dlab
