#include "dlab/bessel.hpp"
#include "dlab/cases.hpp"
#include "dlab/modes.hpp"
#include "dlab/operators.hpp"
#include "dlab/symmetry.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace dlab;
using cplx = std::complex<double>;
static const cplx I_{0.0, 1.0};

namespace {

SheetHamiltonian taub_sheet(double cbar, int sign) {
    MinisuperspaceModel m({-1, 1}, {{2 * cbar, {6, 0}}}, {"Omega", "s"});
    PhaseState s;
    s.q = {0, 0};
    s.p = {1, 0};
    auto pair = factorize_constraint(m, 1, {s});
    return sign > 0 ? pair.first : pair.second;
}

SheetHamiltonian xy_sheet(double zeta, int sign) {
    MinisuperspaceModel m = make_xy_model(zeta);
    PhaseState s;
    s.q = {0, 0};
    s.p = {0, 1};
    auto pair = factorize_constraint(m, 0, {s});
    return sign > 0 ? pair.first : pair.second;
}

// assemble the evolution of a normalized Gaussian into a 2D wavefunction
GridWavefunction propagate_packet(const SheetHamiltonian& sheet,
                                  const Grid1D& gq, const Grid1D& gt,
                                  const std::string& clock) {
    GridWavefunction psi0 = make_wavefunction_1d(gq);
    for (int i = 0; i < gq.n; ++i) {
        const double u = (gq.point(i) + 1.0) / 0.5;
        psi0.values[i] = std::exp(-u * u);
    }
    const double nrm = wavefunction_norm(psi0);
    for (auto& v : psi0.values) v /= nrm;
    std::vector<double> ts(gt.n);
    for (int j = 0; j < gt.n; ++j) ts[j] = gt.point(j);
    auto slices = schrodinger_evolve(sheet, psi0, ts);
    GridWavefunction out = make_wavefunction_2d(gq, gt, clock);
    for (int i = 0; i < gq.n; ++i)
        for (int j = 0; j < gt.n; ++j) out.at(i, j) = slices[j].values[i];
    return out;
}

cplx grid_inner(const GridWavefunction& a, const GridWavefunction& b) {
    cplx sum = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        sum += std::conj(a.values[i]) * b.values[i];
    double measure = 1.0;
    for (const auto& g : a.grids) measure *= g.spacing();
    return sum * measure;
}

}  // namespace

TEST_CASE("sheet labels tie the sign to the clock orientation") {
    CHECK(make_sheet_label(+1, "s").clock == "-s");
    CHECK(make_sheet_label(-1, "s").clock == "+s");
    CHECK_THROWS_AS(make_sheet_label(0, "s"), std::invalid_argument);
}

TEST_CASE("motion reversal") {
    Grid1D gq(-2.0, 2.0, 33), gt(-1.0, 1.0, 21);
    GridWavefunction psi = make_wavefunction_2d(gq, gt, "t");
    const double E = 1.7;
    auto phi = [](double q) {
        return std::exp(-q * q) * std::exp(I_ * 0.9 * q);
    };
    for (int i = 0; i < gq.n; ++i)
        for (int j = 0; j < gt.n; ++j)
            psi.at(i, j) = std::exp(-I_ * E * gt.point(j)) * phi(gq.point(i));

    GridWavefunction mr = motion_reversal(psi);
    for (int i = 0; i < gq.n; ++i)
        for (int j = 0; j < gt.n; ++j) {
            const cplx want = std::exp(-I_ * E * gt.point(j)) *
                              std::conj(phi(gq.point(i)));
            CHECK(std::abs(mr.at(i, j) - want) < 1e-14);
        }
    GridWavefunction twice = motion_reversal(mr);
    for (size_t k = 0; k < psi.values.size(); ++k)
        CHECK(std::abs(twice.values[k] - psi.values[k]) < 1e-15);

    GridWavefunction off = make_wavefunction_2d(gq, Grid1D(0.0, 1.0, 21), "t");
    CHECK_THROWS_AS(motion_reversal(off), std::invalid_argument);
    GridWavefunction unlabeled = make_wavefunction_2d(gq, gt);
    CHECK_THROWS_AS(motion_reversal(unlabeled), std::invalid_argument);
}

TEST_CASE("motion reversal preserves the sheet on propagated packets") {
    SheetHamiltonian plus = taub_sheet(-1.0, +1);
    Grid1D gq(-3.0, 1.1, 121), gt(-1.0, 1.0, 41);
    GridWavefunction psi = propagate_packet(plus, gq, gt, "s");
    CHECK(sheet_propagation_residual(plus, psi) < 1e-10);
    GridWavefunction mr = motion_reversal(psi);
    CHECK(sheet_propagation_residual(plus, mr) < 1e-8);
}

TEST_CASE("clock reversal lands on the opposite sheet") {
    SUBCASE("time-independent reduced Hamiltonian") {
        SheetHamiltonian plus = taub_sheet(-1.0, +1);
        SheetHamiltonian minus = taub_sheet(-1.0, -1);
        Grid1D gq(-3.0, 1.1, 121), gt(-1.0, 1.0, 41);
        GridWavefunction psi = propagate_packet(plus, gq, gt, "s");
        auto [cr, to_sheet] = clock_reversal(psi, make_sheet_label(+1, "s"));
        CHECK(to_sheet.sign == -1);
        CHECK(to_sheet.clock == "+s");
        for (size_t k = 0; k < psi.values.size(); ++k)
            CHECK(cr.values[k] == std::conj(psi.values[k]));
        CHECK(sheet_propagation_residual(minus, cr) < 1e-10);
        // and the original is the conjugate of its reversal
        auto [back, back_sheet] = clock_reversal(cr, to_sheet);
        CHECK(back_sheet.sign == +1);
        for (size_t k = 0; k < psi.values.size(); ++k)
            CHECK(back.values[k] == psi.values[k]);
    }
    SUBCASE("still holds for a clock-dependent reduced Hamiltonian") {
        SheetHamiltonian plus = xy_sheet(1.0, +1);
        SheetHamiltonian minus = xy_sheet(1.0, -1);
        Grid1D gq(-8.0, 8.0, 64), gt(-0.5, 0.5, 21);
        GridWavefunction psi = propagate_packet(plus, gq, gt, "x");
        CHECK(sheet_propagation_residual(plus, psi) < 1e-10);
        auto [cr, to_sheet] = clock_reversal(psi, make_sheet_label(+1, "x"));
        CHECK(sheet_propagation_residual(minus, cr) < 1e-10);
        CHECK(to_sheet.sign == -1);
    }
}

TEST_CASE("the reversal operator is antiunitary on the grid inner product") {
    Grid1D gq(-2.0, 2.0, 33), gt(-1.0, 1.0, 21);
    std::mt19937_64 rng(20240517ULL);
    std::uniform_real_distribution<double> u(-1, 1);
    GridWavefunction a = make_wavefunction_2d(gq, gt, "t");
    GridWavefunction b = make_wavefunction_2d(gq, gt, "t");
    for (size_t k = 0; k < a.values.size(); ++k) {
        a.values[k] = cplx(u(rng), u(rng));
        b.values[k] = cplx(u(rng), u(rng));
    }
    const cplx lhs = grid_inner(motion_reversal(b), motion_reversal(a));
    const cplx rhs = std::conj(grid_inner(b, a));
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("C plus C* decomposition over the I basis") {
    const double zeta = -1.0;
    Grid1D g(-4.0, 1.0, 301);
    auto ibasis = [&](double omega, double x) {
        return mod_bessel_I_imag(omega, std::exp(x)).value;
    };
    SUBCASE("real single-frequency combination splits exactly") {
        const double w = 1.0;
        GridWavefunction slice = make_wavefunction_1d(g);
        for (int i = 0; i < g.n; ++i)
            slice.values[i] = 2.0 * ibasis(w, g.point(i)).real();  // I+ + I-
        CCstarDecomposition dec = decompose_c_cstar(slice, zeta, {w});
        CHECK(dec.reconstruction_error < 1e-6);
        CHECK(std::abs(dec.c_coeffs[0] - 1.0) < 1e-6);
        CHECK(std::abs(dec.cstar_coeffs[0] - 1.0) < 1e-6);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(dec.c_part.values[i] - ibasis(w, g.point(i))) <
                  1e-6);
    }
    SUBCASE("the decaying branch has both components") {
        const double w = 1.0;
        GridWavefunction slice = make_wavefunction_1d(g);
        for (int i = 0; i < g.n; ++i)
            slice.values[i] =
                mod_bessel_K_imag(w, std::exp(g.point(i))).value;
        CCstarDecomposition dec = decompose_c_cstar(slice, zeta, {w});
        CHECK(dec.reconstruction_error < 1e-6);
        const double expect = M_PI / (2 * std::sinh(M_PI * w));
        CHECK(std::abs(dec.c_coeffs[0]) == doctest::Approx(expect).epsilon(
                                               1e-4));
        CHECK(std::abs(dec.cstar_coeffs[0]) ==
              doctest::Approx(expect).epsilon(1e-4));
    }
    SUBCASE("imaginary combination keeps the conjugation pairing") {
        const double w = 0.8;
        GridWavefunction slice = make_wavefunction_1d(g);
        for (int i = 0; i < g.n; ++i)
            slice.values[i] = I_ * (ibasis(w, g.point(i)) -
                                    std::conj(ibasis(w, g.point(i))));
        CCstarDecomposition dec = decompose_c_cstar(slice, zeta, {w});
        CHECK(dec.reconstruction_error < 1e-6);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(dec.cstar_part.values[i] -
                           std::conj(dec.c_part.values[i])) < 1e-8);
    }
    SUBCASE("multi-frequency real input") {
        std::vector<double> ws = {0.7, 1.3};
        std::mt19937_64 rng(20240517ULL);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<cplx> cs = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        GridWavefunction slice = make_wavefunction_1d(g);
        for (int i = 0; i < g.n; ++i) {
            cplx v = 0.0;
            for (size_t k = 0; k < ws.size(); ++k)
                v += cs[k] * ibasis(ws[k], g.point(i)) +
                     std::conj(cs[k] * ibasis(ws[k], g.point(i)));
            slice.values[i] = v;
        }
        CCstarDecomposition dec = decompose_c_cstar(slice, zeta, ws);
        CHECK(dec.reconstruction_error < 1e-6);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(dec.cstar_part.values[i] -
                           std::conj(dec.c_part.values[i])) < 1e-6);
        // report round-trips through JSON
        auto parsed = nlohmann::json::parse(decomposition_json(dec));
        CHECK(parsed["reconstruction_error"].get<double>() < 1e-6);
        CHECK(parsed["c_coeffs"].size() == 2);
    }
    SUBCASE("non-solutions are refused") {
        GridWavefunction slice = make_wavefunction_1d(g);
        for (int i = 0; i < g.n; ++i)
            slice.values[i] = std::exp(-g.point(i) * g.point(i));
        CHECK_THROWS_AS(decompose_c_cstar(slice, zeta, {1.0}), NotASolution);
    }
}

TEST_CASE("kernel split of a real bounded packet") {
    const double zeta = -1.0;
    Grid1D gx(-2.5, 1.5, 61), gy(-3.0, 3.0, 61);
    std::vector<double> ws;
    for (int k = 1; k <= 8; ++k) ws.push_back(0.25 * k);
    std::mt19937_64 rng(20240517ULL);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> cs;
    for (size_t k = 0; k < ws.size(); ++k) cs.push_back(cplx(u(rng), u(rng)));

    GridWavefunction psi = make_wavefunction_2d(gx, gy, "y");
    for (int i = 0; i < gx.n; ++i)
        for (int j = 0; j < gy.n; ++j) {
            cplx v = 0.0;
            for (size_t k = 0; k < ws.size(); ++k) {
                const double rad =
                    mod_bessel_K_imag(ws[k], std::exp(gx.point(i)))
                        .value.real();
                const cplx ph = std::exp(-I_ * ws[k] * gy.point(j));
                v += cs[k] * rad * ph + std::conj(cs[k] * rad * ph);
            }
            psi.at(i, j) = v;
        }

    KernelSplit split = kernel_split(psi, zeta, ws);
    CHECK(split.reconstruction_error < 1e-8);

    // each half is itself a WDW solution
    MinisuperspaceModel m = make_xy_model(zeta);
    WdwResidualReport rp = wdw_residual(m, split.plus_part);
    WdwResidualReport rm = wdw_residual(m, split.minus_part);
    CHECK(rp.residual / rp.psi_norm < 5e-2);
    CHECK(rm.residual / rm.psi_norm < 5e-2);

    // the plus half has no opposite-frequency content left
    KernelSplit again = kernel_split(split.plus_part, zeta, ws);
    double minus_norm = 0.0, plus_norm = 0.0;
    for (const auto& v : again.minus_part.values)
        minus_norm += std::norm(v);
    for (const auto& v : again.plus_part.values) plus_norm += std::norm(v);
    CHECK(std::sqrt(minus_norm) < 1e-8 * std::sqrt(plus_norm));
}
