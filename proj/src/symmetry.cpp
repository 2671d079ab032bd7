#include "dlab/symmetry.hpp"

#include "dlab/bessel.hpp"
#include "dlab/operators.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace dlab {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

}  // namespace

SheetLabel make_sheet_label(int sign, const std::string& axis) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sheet sign must be +-1");
    SheetLabel label;
    label.sign = sign;
    label.clock = (sign > 0 ? "-" : "+") + axis;
    return label;
}

GridWavefunction motion_reversal(const GridWavefunction& psi) {
    psi.check_shape();
    const int axis = psi.clock_axis();
    if (axis < 0)
        throw std::invalid_argument("motion reversal needs a clock axis");
    const Grid1D& ct = psi.grids[axis];
    if (std::abs(ct.lo + ct.hi) > 1e-9 * (ct.hi - ct.lo))
        throw std::invalid_argument(
            "clock grid must be symmetric about zero");
    GridWavefunction out = psi;
    if (psi.grids.size() == 1) {
        for (int j = 0; j < ct.n; ++j)
            out.values[j] = std::conj(psi.values[ct.n - 1 - j]);
    } else {
        for (int i = 0; i < psi.grids[0].n; ++i)
            for (int j = 0; j < ct.n; ++j)
                out.at(i, j) = std::conj(psi.at(i, ct.n - 1 - j));
    }
    return out;
}

std::pair<GridWavefunction, SheetLabel> clock_reversal(
    const GridWavefunction& psi, const SheetLabel& from_sheet) {
    psi.check_shape();
    GridWavefunction out = psi;
    for (auto& v : out.values) v = std::conj(v);
    std::string axis = from_sheet.clock;
    if (!axis.empty() && (axis[0] == '+' || axis[0] == '-'))
        axis = axis.substr(1);
    return {out, make_sheet_label(-from_sheet.sign, axis)};
}

double sheet_propagation_residual(const SheetHamiltonian& sheet,
                                  const GridWavefunction& psi) {
    psi.check_shape();
    if (psi.grids.size() != 2)
        throw std::invalid_argument("need a (reduced, clock) wavefunction");
    const Grid1D& gq = psi.grids[0];
    const Grid1D& gt = psi.grids[1];
    GridWavefunction slice0 = make_wavefunction_1d(gq);
    for (int i = 0; i < gq.n; ++i) slice0.values[i] = psi.at(i, 0);
    const double amp = wavefunction_norm(slice0);
    if (amp == 0.0) return 0.0;
    for (auto& v : slice0.values) v /= amp;
    std::vector<double> ts(gt.n);
    for (int j = 0; j < gt.n; ++j) ts[j] = gt.point(j);
    auto slices = schrodinger_evolve(sheet, slice0, ts);
    double worst = 0.0;
    for (int j = 0; j < gt.n; ++j) {
        double diff = 0.0;
        for (int i = 0; i < gq.n; ++i)
            diff += std::norm(psi.at(i, j) - amp * slices[j].values[i]);
        worst = std::max(worst, std::sqrt(diff * gq.spacing()) / amp);
    }
    return worst;
}

namespace {

// least squares over a family of sampled basis columns
VectorXcd lsq_fit(const MatrixXcd& B, const VectorXcd& rhs) {
    return B.completeOrthogonalDecomposition().solve(rhs);
}

}  // namespace

CCstarDecomposition decompose_c_cstar(const GridWavefunction& slice,
                                      double zeta,
                                      const std::vector<double>& omegas,
                                      double not_solution_threshold) {
    slice.check_shape();
    if (slice.grids.size() != 1)
        throw std::invalid_argument("decompose expects a fixed-clock slice");
    if (zeta >= 0) throw std::invalid_argument("the I basis needs zeta < 0");
    if (omegas.empty()) throw std::invalid_argument("empty frequency list");
    const Grid1D& g = slice.grids[0];
    const int n = g.n;
    const int K = static_cast<int>(omegas.size());
    const double root = std::sqrt(-zeta);

    MatrixXcd B(n, 2 * K);
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < n; ++i) {
            const cplx iv =
                mod_bessel_I_imag(omegas[k], root * std::exp(g.point(i)))
                    .value;
            B(i, k) = iv;
            B(i, K + k) = std::conj(iv);  // I_{-i omega}
        }
    VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = slice.values[i];
    VectorXcd coeff = lsq_fit(B, rhs);
    VectorXcd recon = B * coeff;
    const double refn = rhs.norm();
    const double err = refn > 0 ? (recon - rhs).norm() / refn : 0.0;
    if (err > not_solution_threshold)
        throw NotASolution(
            "slice is not in the span of the mode basis, residual " +
                std::to_string(err),
            err);

    CCstarDecomposition dec;
    dec.reconstruction_error = err;
    dec.c_part = make_wavefunction_1d(g);
    dec.cstar_part = make_wavefunction_1d(g);
    VectorXcd cvec = B.leftCols(K) * coeff.head(K);
    VectorXcd svec = B.rightCols(K) * coeff.tail(K);
    for (int i = 0; i < n; ++i) {
        dec.c_part.values[i] = cvec[i];
        dec.cstar_part.values[i] = svec[i];
    }
    dec.c_coeffs.assign(coeff.data(), coeff.data() + K);
    dec.cstar_coeffs.assign(coeff.data() + K, coeff.data() + 2 * K);
    return dec;
}

std::string decomposition_json(const CCstarDecomposition& dec) {
    nlohmann::json j;
    j["reconstruction_error"] = dec.reconstruction_error;
    j["c_norm"] = wavefunction_norm(dec.c_part);
    j["cstar_norm"] = wavefunction_norm(dec.cstar_part);
    auto dump = [](const std::vector<cplx>& cs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : cs)
            arr.push_back({{"re", c.real()}, {"im", c.imag()}});
        return arr;
    };
    j["c_coeffs"] = dump(dec.c_coeffs);
    j["cstar_coeffs"] = dump(dec.cstar_coeffs);
    return j.dump(2);
}

KernelSplit kernel_split(const GridWavefunction& psi, double zeta,
                         const std::vector<double>& omegas) {
    psi.check_shape();
    if (psi.grids.size() != 2)
        throw std::invalid_argument("kernel split expects an (x, y) packet");
    if (zeta >= 0) throw std::invalid_argument("bounded branch needs zeta < 0");
    const Grid1D& gx = psi.grids[0];
    const Grid1D& gy = psi.grids[1];
    const int nx = gx.n, ny = gy.n;
    const int K = static_cast<int>(omegas.size());
    const double root = std::sqrt(-zeta);

    // basis: e^{-i w y} K_{iw} (Ker K+), e^{+i w y} K_{iw} (Ker K-)
    MatrixXcd B(nx * ny, 2 * K);
    for (int k = 0; k < K; ++k) {
        std::vector<double> radial(nx);
        for (int i = 0; i < nx; ++i)
            radial[i] =
                mod_bessel_K_imag(omegas[k], root * std::exp(gx.point(i)))
                    .value.real();
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const cplx ph = std::exp(-kI * omegas[k] * gy.point(j));
                B(i * ny + j, k) = radial[i] * ph;
                B(i * ny + j, K + k) = radial[i] * std::conj(ph);
            }
    }
    VectorXcd rhs(nx * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) rhs[i * ny + j] = psi.at(i, j);
    VectorXcd coeff = lsq_fit(B, rhs);

    KernelSplit split;
    split.plus_part = make_wavefunction_2d(gx, gy, psi.clock_label);
    split.minus_part = make_wavefunction_2d(gx, gy, psi.clock_label);
    VectorXcd pv = B.leftCols(K) * coeff.head(K);
    VectorXcd mv = B.rightCols(K) * coeff.tail(K);
    for (int i = 0; i < nx * ny; ++i) {
        split.plus_part.values[i] = pv[i];
        split.minus_part.values[i] = mv[i];
    }
    const double refn = rhs.norm();
    split.reconstruction_error =
        refn > 0 ? (pv + mv - rhs).norm() / refn : 0.0;
    return split;
}

}  // namespace dlab
