#ifndef DLAB_OPERATORS_HPP
#define DLAB_OPERATORS_HPP

#include "dlab/canonical.hpp"
#include "dlab/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

// Discretized reduced Hamiltonians: spectral square roots, Schroedinger
// propagation (plain and time-ordered), sheet-operator products, and the
// operator-ordering comparison.

namespace dlab {

struct DiscretizedOperator {
    enum class Boundary { dirichlet_zero, outgoing_decay };
    Grid1D grid;
    Eigen::MatrixXcd matrix;
    Boundary boundary = Boundary::dirichlet_zero;

    bool is_hermitian(double tol = 1e-12) const;
};

// -d^2/dq^2 with Dirichlet ends (2nd order).
DiscretizedOperator minus_second_derivative(const Grid1D& grid);
// 4th-order central first derivative d/dq (one-sided rows at the edges).
Eigen::MatrixXd first_derivative_matrix(const Grid1D& grid);

class NonPositiveSpectrum : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpectrumResult {
    std::vector<double> energies;     // E = sqrt(E^2) >= 0, ascending
    Eigen::MatrixXd eigenfunctions;   // columns, normalized with the measure
    Grid1D grid;
};

// Generalized eigenpairs of the discretized h^2 = -d^2/dq^2 + V_red on the
// sheet's reduced axis, Dirichlet boundary.
SpectrumResult reduced_spectrum(const SheetHamiltonian& sheet,
                                const Grid1D& grid, int n_modes,
                                double clock_value = 0.0);

// h^2(t) as a dense real symmetric matrix at a given clock value.
Eigen::MatrixXd h_squared_matrix(const SheetHamiltonian& sheet,
                                 const Grid1D& grid, double clock_value);
// Spectral square root h(t) (eigenvalues clamped at 0 within -1e-10).
Eigen::MatrixXd h_matrix(const SheetHamiltonian& sheet, const Grid1D& grid,
                         double clock_value);

// Propagation of a 1D wavefunction along the sheet's clock parameter.  The
// generator is sign(h) per sheet: psi(t+dt) = exp(-i * sheet.sign * h * dt).
// Time-dependent h uses one midpoint-sampled spectral exponential per
// t_grid interval (the ordered product).
std::vector<GridWavefunction> schrodinger_evolve(
    const SheetHamiltonian& sheet, const GridWavefunction& psi0,
    const std::vector<double>& t_grid);

// Ordered product for an arbitrary Hermitian family H(t); returns the state
// at the end of t_grid.
Eigen::VectorXcd ordered_propagate(
    const std::function<Eigen::MatrixXd(double)>& H, Eigen::VectorXcd psi,
    const std::vector<double>& t_grid);

struct SheetProductReport {
    double r_pm = 0.0;              // ||(K+ K- - H0) psi||
    double r_mp = 0.0;              // ||(K- K+ - H0) psi||
    double symmetrized = 0.0;       // ||(1/2 (K+K- + K-K+) - H0) psi||
    double commutator_norm = 0.0;   // ||(dh/dt) psi|| (independent route)
};

// psi lives on (reduced axis, clock axis) with the clock as axis 1.
SheetProductReport sheet_product_residual(const SheetHamiltonian& sheet,
                                          const GridWavefunction& psi);

struct OrderingReport {
    double max_deviation = 0.0;      // max_f ||(general - trivial) f|| / ||f||
    std::complex<double> coeff_first = 0.0;  // fitted weight of e^{bq} f'
    std::complex<double> coeff_zero = 0.0;   // fitted weight of e^{bq} f
    double fit_residual = 0.0;       // relative, of the two-profile fit
};

OrderingReport ordering_check(
    double A, double C, double b, const Grid1D& grid,
    const std::vector<std::function<std::complex<double>(double)>>& test_fns);

}  // namespace dlab

#endif
