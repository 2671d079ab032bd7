#ifndef DLAB_MODES_HPP
#define DLAB_MODES_HPP

#include "dlab/grid.hpp"
#include "dlab/model.hpp"

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Separable Wheeler-DeWitt mode solutions, grid residuals of candidate
// solutions, and the boundary (single-frequency) selection of modes.

namespace dlab {

// Coefficient families over a common frequency grid.  Family keys:
//   "a+", "a-", "b+", "b-"  — y-phase weights of the two radial branches
//   "atilde", "c", "d"      — branch weights of the product (taub) modes
struct ModeSpectrum {
    std::vector<double> omegas;
    std::map<std::string, std::vector<std::complex<double>>> families;

    void check() const;  // every family sampled on the omega grid
    std::complex<double> coeff(const std::string& family, size_t idx) const;
};

enum class WdwCase { zeta_pos, zeta_neg, taub };

struct WdwCaseParams {
    double zeta = 0.0;    // zeta_pos / zeta_neg
    double cbar = 0.0;    // taub (< 0)
    double lambda = 0.0;  // taub (!= 0)
};

// One separable solution at frequency omega evaluated at a point.
//   zeta_pos: [a+ e^{i w y} + a- e^{-i w y}] J_{iw}(sqrt(zeta) e^x)
//           + [b+ e^{i w y} + b- e^{-i w y}] N_{iw}(sqrt(zeta) e^x)
//   zeta_neg: same with K (a families) and I (b families) of sqrt|zeta| e^x
//   taub:     atilde I_{iw}(|l| e^{-phi}) K_{iw/3}(z) + c K_{iw} K_{iw/3}
//           + d I_{iw} I_{iw/3},  z = (sqrt|2 cbar|/3) e^{3 Omega},
//             point = (Omega, phi)
std::complex<double> wdw_mode_value(WdwCase wcase, const WdwCaseParams& params,
                                    double omega, const ModeSpectrum& modes,
                                    size_t idx, double q0, double q1);

class GridTooCoarse : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct WdwResidualReport {
    double residual = 0.0;         // interior L2 of the WDW operator applied
    double coarse_residual = 0.0;  // same on the every-other-point subgrid
    double convergence_order = 0.0;
    double psi_norm = 0.0;         // interior L2 of psi, for scaling
};

// 5-point cross stencil residual of (-s0 d0^2 - s1 d1^2 + V) psi.
WdwResidualReport wdw_residual(const MinisuperspaceModel& model,
                               const GridWavefunction& psi);

struct BoundaryFit {
    double omega = 0.0;
    bool accepted = false;
    std::complex<double> single_coeff;
    double single_residual = 0.0;  // relative
    std::complex<double> two_pos, two_neg;
    double two_residual = 0.0;  // relative
};

class BoundaryUndecided : public std::runtime_error {
  public:
    BoundaryUndecided(const std::string& what, BoundaryFit fit)
        : std::runtime_error(what), fit(std::move(fit)) {}
    BoundaryFit fit;
};

// Keeps the modes whose clock-direction profile fits a single e^{-i w q}
// factor over the last quarter of `region` (relative residual < 1e-3);
// drops two-frequency combinations (two-term fit >= 10x better).  Profiles
// that fit neither way raise BoundaryUndecided.
std::pair<ModeSpectrum, std::vector<BoundaryFit>> boundary_select(
    const ModeSpectrum& modes,
    const std::function<std::complex<double>(double omega, double q)>& profile,
    const Grid1D& region);

}  // namespace dlab

#endif
