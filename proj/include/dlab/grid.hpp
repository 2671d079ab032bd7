#ifndef DLAB_GRID_HPP
#define DLAB_GRID_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

struct Grid1D {
    double lo = 0.0, hi = 1.0;
    int n = 16;

    Grid1D() = default;
    Grid1D(double lo, double hi, int n) : lo(lo), hi(hi), n(n) {
        if (!(hi > lo)) throw std::invalid_argument("grid needs hi > lo");
        if (n < 16) throw std::invalid_argument("grid needs n >= 16");
    }
    double spacing() const { return (hi - lo) / (n - 1); }
    double point(int i) const { return lo + i * spacing(); }
};

// Complex values on one or two rectangular grids.  For two grids the layout
// is row-major: values[i * grids[1].n + j] at (grids[0].point(i),
// grids[1].point(j)).
struct GridWavefunction {
    std::vector<Grid1D> grids;
    std::vector<std::complex<double>> values;
    std::string clock_label;  // optional axis name of the clock

    int clock_axis() const;  // index of the clock grid, -1 if unnamed
    std::complex<double>& at(int i, int j) {
        return values[i * grids[1].n + j];
    }
    const std::complex<double>& at(int i, int j) const {
        return values[i * grids[1].n + j];
    }
    void check_shape() const;
};

GridWavefunction make_wavefunction_1d(const Grid1D& g);
GridWavefunction make_wavefunction_2d(const Grid1D& g0, const Grid1D& g1,
                                      std::string clock_label = "");

// l2 norm with the trapezoid measure of the grid(s).
double wavefunction_norm(const GridWavefunction& psi);

// Fixed-clock-slice inner product for 1D functions over the non-clock axis:
// <a|b> = sum conj(a) b * spacing.
std::complex<double> slice_inner_product(
    const std::vector<std::complex<double>>& a,
    const std::vector<std::complex<double>>& b, double spacing);

}  // namespace dlab

#endif
