#ifndef DLAB_TRANSFORM_HPP
#define DLAB_TRANSFORM_HPP

#include "dlab/grid.hpp"

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

// Generalized Fourier transforms Psi(q) = N int dQ e^{iF1(q,Q)} Phi(Q)
// generated by a classical F1(q,Q), their inverses (with the mixed-second
// Jacobian weight), and the operator compatibility condition of the kernel.

namespace dlab {

struct GeneratingKernel {
    std::string name;  // fourier_exchange | taub_sinh
    std::function<double(double q, double Q)> F1;
    std::function<double(double q, double Q)> mixed_second;
    // analytic continuation in Q for path-steered quadrature (may be null)
    std::function<std::complex<double>(double q, std::complex<double> Q)>
        F1_complex;
    double normalization = 1.0;
};

GeneratingKernel make_fourier_exchange_kernel();  // F1 = q Q
// F1 = sign |lambda| e^{-q} sinh Q  (q = phi, Q = s)
GeneratingKernel make_taub_sinh_kernel(double lambda_abs, int sign);

// max |mixed_second - finite-difference probe of F1| over the sample grids
double kernel_consistency_residual(const GeneratingKernel& kernel,
                                   const Grid1D& q_grid, const Grid1D& Q_grid);

// H = c2(x) p^2 + c1(x) p + c0(x); null entries mean zero
struct OperatorSpec {
    std::function<double(double)> c0, c1, c2;
};

// max-norm over the grid of H_q(-i d_q, q) e^{iF1} - H_Q(+i d_Q, Q) e^{iF1},
// evaluated through the phase symbols (derivatives of F1 by differences).
double kernel_condition_residual(const GeneratingKernel& kernel,
                                 const OperatorSpec& H_q,
                                 const OperatorSpec& H_Q,
                                 const Grid1D& q_grid, const Grid1D& Q_grid);

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate(estimate) {}
    double estimate;
};

struct TransformOptions {
    double taper_fraction = 0.15;  // cosine ramp at each window end
    double tol = 1e-8;             // per-panel error target
    int max_panels = 4096;
};

struct TransformResult {
    GridWavefunction psi;
    double quad_error = 0.0;           // accumulated panel estimate, worst row
    double window_sensitivity = 0.0;   // rel change, half window vs full
};

TransformResult generalized_fourier(const GeneratingKernel& kernel,
                                    const GridWavefunction& phi,
                                    const Grid1D& q_grid,
                                    const TransformOptions& opt = {});

// Phi(Q) = N int dq |mixed_second| e^{-iF1} Psi(q)
TransformResult inverse_generalized_fourier(const GeneratingKernel& kernel,
                                            const GridWavefunction& psi,
                                            const Grid1D& Q_grid,
                                            const TransformOptions& opt = {});

// Forward transform along the steered complex-Q path that encodes decaying
// data at the ends (Q = x - 3 i pi/2, Q = i y, Q = x + i pi/2), for kernels
// with an analytic continuation.  phi must be evaluable at complex Q; `tail`
// truncates the outgoing legs at |Re Q| = tail.
GridWavefunction contour_generalized_fourier(
    const GeneratingKernel& kernel,
    const std::function<std::complex<double>(std::complex<double>)>& phi,
    const Grid1D& q_grid, double tail, double tol = 1e-8);

}  // namespace dlab

#endif
