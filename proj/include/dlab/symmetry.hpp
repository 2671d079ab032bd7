#ifndef DLAB_SYMMETRY_HPP
#define DLAB_SYMMETRY_HPP

#include "dlab/canonical.hpp"
#include "dlab/grid.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

// Motion reversal and clock reversal of grid wavefunctions, the C + C*
// decomposition of solution slices over the I_{+-i omega} basis, and the
// kernel split of bounded packets into the two sheet kernels.

namespace dlab {

struct SheetLabel {
    int sign = +1;      // K+ <-> +1, K- <-> -1
    std::string clock;  // oriented axis name, e.g. "-s" for the K+ sheet
};

// K+ runs against the factored coordinate, K- along it.
SheetLabel make_sheet_label(int sign, const std::string& axis);

// Psi^mr(q, t) = conj(Psi(q, -t)); the clock grid must be symmetric about 0.
GridWavefunction motion_reversal(const GridWavefunction& psi);

// Psi^cr = conj(Psi); lands on the opposite sheet.
std::pair<GridWavefunction, SheetLabel> clock_reversal(
    const GridWavefunction& psi, const SheetLabel& from_sheet);

// Max over clock slices of the relative deviation from re-propagating the
// first slice with the sheet's own (discrete) propagator.
double sheet_propagation_residual(const SheetHamiltonian& sheet,
                                  const GridWavefunction& psi);

class NotASolution : public std::runtime_error {
  public:
    NotASolution(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

struct CCstarDecomposition {
    GridWavefunction c_part, cstar_part;
    std::vector<std::complex<double>> c_coeffs;      // over I_{+i omega}
    std::vector<std::complex<double>> cstar_coeffs;  // over I_{-i omega}
    double reconstruction_error = 0.0;               // relative L2
};

// Fixed-clock-slice split of a solution profile over x into its I_{+i w}
// and I_{-i w} components (zeta < 0 family).  Inputs outside the solution
// span raise NotASolution.
CCstarDecomposition decompose_c_cstar(const GridWavefunction& slice,
                                      double zeta,
                                      const std::vector<double>& omegas,
                                      double not_solution_threshold = 1e-4);

std::string decomposition_json(const CCstarDecomposition& dec);

struct KernelSplit {
    GridWavefunction plus_part, minus_part;  // Ker K+ and Ker K- pieces
    double reconstruction_error = 0.0;
};

// Splits a (x, y) packet built on the bounded radial branch into its
// e^{-i w y} (Ker K+) and e^{+i w y} (Ker K-) halves.
KernelSplit kernel_split(const GridWavefunction& psi, double zeta,
                         const std::vector<double>& omegas);

}  // namespace dlab

#endif
