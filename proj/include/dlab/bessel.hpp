#ifndef DLAB_BESSEL_HPP
#define DLAB_BESSEL_HPP

#include <complex>
#include <stdexcept>

// Bessel and modified Bessel functions of pure imaginary order on the
// positive real axis.  Series are evaluated in quad precision so that the
// heavy cancellation of the oscillatory regimes stays below the 1e-10
// relative target; K additionally has a direct quadrature route for the
// monotone regime x >> omega.

namespace dlab {

struct ImagOrderResult {
    std::complex<double> value;
    double est_error = 0.0;  // absolute error estimate
};

// Supported parameter box.  Requests outside raise UnsupportedRange.
constexpr double kMaxImagOrder = 50.0;
constexpr double kMaxBesselArg = 60.0;

class UnsupportedRange : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// K_{i omega}(x), real-valued for real omega and x > 0.
ImagOrderResult mod_bessel_K_imag(double omega, double x);

// I_{i omega}(x); conj(I_{i omega}) = I_{-i omega}.
ImagOrderResult mod_bessel_I_imag(double omega, double x);

// J_{i omega}(x) and N_{i omega}(x) (Bessel / Neumann of imaginary order).
ImagOrderResult bessel_J_imag(double omega, double x);
ImagOrderResult bessel_N_imag(double omega, double x);

// Gamma(1 + i omega), used by the series and exposed for audit.
std::complex<double> gamma_one_plus_imag(double omega);

}  // namespace dlab

#endif
