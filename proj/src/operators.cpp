#include "dlab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

constexpr cplx kI{0.0, 1.0};

// Eigendecomposition with the usual negative-tail guard.  Values below
// -tol abort, values in [-tol, 0) clamp to zero.
struct SymEig {
    VectorXd lambda;
    MatrixXd U;
};

SymEig sym_eig(const MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigen decomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

MatrixXd spectral_sqrt(const MatrixXd& M) {
    auto eig = sym_eig(M);
    VectorXd root(eig.lambda.size());
    for (int k = 0; k < eig.lambda.size(); ++k) {
        if (eig.lambda[k] < -1e-10)
            throw NonPositiveSpectrum(
                "h^2 has an eigenvalue below zero: " +
                std::to_string(eig.lambda[k]));
        root[k] = std::sqrt(std::max(eig.lambda[k], 0.0));
    }
    return eig.U * root.asDiagonal() * eig.U.transpose();
}

}  // namespace

bool DiscretizedOperator::is_hermitian(double tol) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() < tol;
}

DiscretizedOperator minus_second_derivative(const Grid1D& grid) {
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    DiscretizedOperator op;
    op.grid = grid;
    op.matrix = MatrixXcd::Zero(grid.n, grid.n);
    for (int i = 0; i < grid.n; ++i) {
        op.matrix(i, i) = 2.0 * inv_h2;
        if (i > 0) op.matrix(i, i - 1) = -inv_h2;
        if (i + 1 < grid.n) op.matrix(i, i + 1) = -inv_h2;
    }
    return op;
}

MatrixXd first_derivative_matrix(const Grid1D& grid) {
    const double h = grid.spacing();
    const int n = grid.n;
    MatrixXd D = MatrixXd::Zero(n, n);
    // 4th-order central stencil in the interior
    for (int i = 2; i < n - 2; ++i) {
        D(i, i - 2) = 1.0 / (12 * h);
        D(i, i - 1) = -8.0 / (12 * h);
        D(i, i + 1) = 8.0 / (12 * h);
        D(i, i + 2) = -1.0 / (12 * h);
    }
    const double f0[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25};
    const double f1[5] = {-0.25, -5.0 / 6, 1.5, -0.5, 1.0 / 12};
    for (int k = 0; k < 5; ++k) {
        D(0, k) = f0[k] / h;
        D(1, k) = f1[k] / h;
        D(n - 1, n - 1 - k) = -f0[k] / h;
        D(n - 2, n - 1 - k) = -f1[k] / h;
    }
    return D;
}

MatrixXd h_squared_matrix(const SheetHamiltonian& sheet, const Grid1D& grid,
                          double clock_value) {
    MatrixXd M = minus_second_derivative(grid).matrix.real();
    for (int i = 0; i < grid.n; ++i)
        M(i, i) += sheet.reduced_potential(grid.point(i), clock_value);
    return M;
}

MatrixXd h_matrix(const SheetHamiltonian& sheet, const Grid1D& grid,
                  double clock_value) {
    return spectral_sqrt(h_squared_matrix(sheet, grid, clock_value));
}

SpectrumResult reduced_spectrum(const SheetHamiltonian& sheet,
                                const Grid1D& grid, int n_modes,
                                double clock_value) {
    if (n_modes < 1 || n_modes > grid.n)
        throw std::invalid_argument("n_modes out of range");
    auto eig = sym_eig(h_squared_matrix(sheet, grid, clock_value));
    SpectrumResult out;
    out.grid = grid;
    out.energies.reserve(n_modes);
    out.eigenfunctions.resize(grid.n, n_modes);
    const double scale = 1.0 / std::sqrt(grid.spacing());
    for (int k = 0; k < n_modes; ++k) {
        if (eig.lambda[k] < -1e-10)
            throw NonPositiveSpectrum(
                "reduced Hamiltonian squared is not positive, E^2 = " +
                std::to_string(eig.lambda[k]));
        out.energies.push_back(std::sqrt(std::max(eig.lambda[k], 0.0)));
        out.eigenfunctions.col(k) = eig.U.col(k) * scale;
    }
    return out;
}

VectorXcd ordered_propagate(const std::function<MatrixXd(double)>& H,
                            VectorXcd psi, const std::vector<double>& t_grid) {
    for (size_t j = 0; j + 1 < t_grid.size(); ++j) {
        const double dt = t_grid[j + 1] - t_grid[j];
        auto eig = sym_eig(H(0.5 * (t_grid[j] + t_grid[j + 1])));
        VectorXcd coeff = eig.U.transpose() * psi;
        for (int k = 0; k < coeff.size(); ++k)
            coeff[k] *= std::exp(-kI * eig.lambda[k] * dt);
        psi = eig.U * coeff;
    }
    return psi;
}

std::vector<GridWavefunction> schrodinger_evolve(
    const SheetHamiltonian& sheet, const GridWavefunction& psi0,
    const std::vector<double>& t_grid) {
    psi0.check_shape();
    if (psi0.grids.size() != 1)
        throw std::invalid_argument("evolve needs a 1D initial slice");
    if (t_grid.size() < 2)
        throw std::invalid_argument("need at least two clock values");
    if (std::abs(wavefunction_norm(psi0) - 1.0) > 1e-8)
        throw std::invalid_argument("initial slice is not normalized");
    const Grid1D& grid = psi0.grids[0];
    VectorXcd psi(grid.n);
    for (int i = 0; i < grid.n; ++i) psi[i] = psi0.values[i];

    std::vector<GridWavefunction> out;
    out.reserve(t_grid.size());
    auto snapshot = [&](const VectorXcd& v) {
        GridWavefunction w = make_wavefunction_1d(grid);
        for (int i = 0; i < grid.n; ++i) w.values[i] = v[i];
        out.push_back(std::move(w));
    };
    snapshot(psi);

    const double sg = sheet.sign;
    if (!sheet.time_dependent) {
        auto eig = sym_eig(h_squared_matrix(sheet, grid, 0.0));
        VectorXd E(eig.lambda.size());
        for (int k = 0; k < E.size(); ++k) {
            if (eig.lambda[k] < -1e-10)
                throw NonPositiveSpectrum("h^2 not positive in evolve");
            E[k] = std::sqrt(std::max(eig.lambda[k], 0.0));
        }
        VectorXcd coeff = eig.U.transpose() * psi;
        for (size_t j = 1; j < t_grid.size(); ++j) {
            const double dt = t_grid[j] - t_grid[0];
            VectorXcd c = coeff;
            for (int k = 0; k < c.size(); ++k)
                c[k] *= std::exp(-kI * sg * E[k] * dt);
            snapshot(eig.U * c);
        }
        return out;
    }
    for (size_t j = 0; j + 1 < t_grid.size(); ++j) {
        const double dt = t_grid[j + 1] - t_grid[j];
        const double tm = 0.5 * (t_grid[j] + t_grid[j + 1]);
        MatrixXd h = h_matrix(sheet, grid, tm);
        auto eig = sym_eig(h);
        VectorXcd coeff = eig.U.transpose() * psi;
        for (int k = 0; k < coeff.size(); ++k)
            coeff[k] *= std::exp(-kI * sg * eig.lambda[k] * dt);
        psi = eig.U * coeff;
        snapshot(psi);
    }
    return out;
}

SheetProductReport sheet_product_residual(const SheetHamiltonian& sheet,
                                          const GridWavefunction& psi) {
    psi.check_shape();
    if (psi.grids.size() != 2)
        throw std::invalid_argument("sheet products need a 2D wavefunction");
    const Grid1D& gq = psi.grids[0];  // reduced axis
    const Grid1D& gt = psi.grids[1];  // clock axis
    const int nq = gq.n, nt = gt.n;

    MatrixXcd Psi(nq, nt);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nt; ++j) Psi(i, j) = psi.at(i, j);

    // h(t) per clock slice from the spectral square root
    std::vector<MatrixXd> h(nt);
    for (int j = 0; j < nt; ++j)
        h[j] = h_matrix(sheet, gq, gt.point(j));

    MatrixXd Dt = first_derivative_matrix(gt);
    auto apply_h = [&](const MatrixXcd& f) {
        MatrixXcd out(nq, nt);
        for (int j = 0; j < nt; ++j) out.col(j) = h[j] * f.col(j);
        return out;
    };
    auto apply_Dt = [&](const MatrixXcd& f) {
        return MatrixXcd(f * Dt.transpose());
    };
    auto apply_K = [&](int sgn, const MatrixXcd& f) {
        // K_sgn = -i d/dt + sgn * h
        return MatrixXcd(-kI * apply_Dt(f) + double(sgn) * apply_h(f));
    };

    MatrixXcd Kp_Km = apply_K(+1, apply_K(-1, Psi));
    MatrixXcd Km_Kp = apply_K(-1, apply_K(+1, Psi));
    MatrixXcd H0 = -apply_Dt(apply_Dt(Psi)) - apply_h(apply_h(Psi));

    // interior-only l2 norms (one-sided edge stencils excluded, twice over)
    auto inorm = [&](const MatrixXcd& f) {
        double s = 0.0;
        for (int i = 0; i < nq; ++i)
            for (int j = 4; j < nt - 4; ++j) s += std::norm(f(i, j));
        return std::sqrt(s * gq.spacing() * gt.spacing());
    };

    SheetProductReport rep;
    rep.r_pm = inorm(Kp_Km - H0);
    rep.r_mp = inorm(Km_Kp - H0);
    rep.symmetrized = inorm(0.5 * (Kp_Km + Km_Kp) - H0);

    // independent commutator magnitude: [d/dt, h] psi = (dh/dt) psi, with
    // dh/dt from a fine finite difference of the analytic slice family
    const double eps = 1e-4;
    MatrixXcd dpsi(nq, nt);
    for (int j = 0; j < nt; ++j) {
        const double t = gt.point(j);
        MatrixXd dh = (h_matrix(sheet, gq, t + eps) -
                       h_matrix(sheet, gq, t - eps)) /
                      (2 * eps);
        dpsi.col(j) = dh * Psi.col(j);
    }
    rep.commutator_norm = inorm(dpsi);
    return rep;
}

OrderingReport ordering_check(
    double A, double C, double b, const Grid1D& grid,
    const std::vector<std::function<cplx(double)>>& test_fns) {
    if (test_fns.empty())
        throw std::invalid_argument("ordering_check needs test functions");
    const int n = grid.n;
    MatrixXd D = first_derivative_matrix(grid);
    VectorXd q(n);
    for (int i = 0; i < n; ++i) q[i] = grid.point(i);
    auto expv = [&](double c) {
        return VectorXd((c * q.array()).exp().matrix());
    };
    // G = e^{Aq} d [ e^{(b-A-C)q} d ( e^{Cq} . ) ], T = e^{bq} d d
    MatrixXd G = expv(A).asDiagonal() * D * expv(b - A - C).asDiagonal() * D *
                 MatrixXd(expv(C).asDiagonal());
    MatrixXd T = expv(b).asDiagonal() * D * D;

    const int lo = 4, hi = n - 4;  // skip one-sided stencil contamination
    OrderingReport rep;
    MatrixXcd basis(hi - lo, 2);
    VectorXcd rhs_sum = VectorXcd::Zero(2);
    MatrixXcd normal = MatrixXcd::Zero(2, 2);
    for (const auto& fn : test_fns) {
        VectorXcd f(n);
        for (int i = 0; i < n; ++i) f[i] = fn(q[i]);
        VectorXcd dev = (G - T) * f;
        VectorXcd df = D * f;
        double fnorm = f.segment(lo, hi - lo).norm();
        rep.max_deviation = std::max(
            rep.max_deviation, dev.segment(lo, hi - lo).norm() /
                                   std::max(fnorm, 1e-300));
        // accumulate the joint least-squares fit of dev against
        // e^{bq} f' and e^{bq} f over the interior
        for (int i = lo; i < hi; ++i) {
            const double w = std::exp(b * q[i]);
            basis(i - lo, 0) = w * df[i];
            basis(i - lo, 1) = w * f[i];
        }
        normal += basis.adjoint() * basis;
        rhs_sum += basis.adjoint() * dev.segment(lo, hi - lo);
    }
    Eigen::Vector2cd coeff = normal.ldlt().solve(rhs_sum);
    rep.coeff_first = coeff[0];
    rep.coeff_zero = coeff[1];
    // residual of the fit, pooled over all test functions
    double res2 = 0.0, ref2 = 0.0;
    for (const auto& fn : test_fns) {
        VectorXcd f(n);
        for (int i = 0; i < n; ++i) f[i] = fn(q[i]);
        VectorXcd dev = (G - T) * f;
        VectorXcd df = D * f;
        for (int i = lo; i < hi; ++i) {
            const double w = std::exp(b * q[i]);
            cplx model = coeff[0] * w * df[i] + coeff[1] * w * f[i];
            res2 += std::norm(dev[i] - model);
            ref2 += std::norm(dev[i]);
        }
    }
    rep.fit_residual = ref2 > 0 ? std::sqrt(res2 / ref2) : 0.0;
    return rep;
}

}  // namespace dlab
