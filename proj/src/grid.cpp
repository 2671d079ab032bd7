#include "dlab/grid.hpp"

#include <cmath>

namespace dlab {

int GridWavefunction::clock_axis() const {
    if (clock_label.empty()) return -1;
    return static_cast<int>(grids.size()) - 1;  // clock is the last axis
}

void GridWavefunction::check_shape() const {
    size_t expect = 1;
    for (const auto& g : grids) expect *= g.n;
    if (grids.empty() || grids.size() > 2 || values.size() != expect)
        throw std::invalid_argument("wavefunction shape mismatch");
}

GridWavefunction make_wavefunction_1d(const Grid1D& g) {
    GridWavefunction psi;
    psi.grids = {g};
    psi.values.assign(g.n, 0.0);
    return psi;
}

GridWavefunction make_wavefunction_2d(const Grid1D& g0, const Grid1D& g1,
                                      std::string clock_label) {
    GridWavefunction psi;
    psi.grids = {g0, g1};
    psi.values.assign(static_cast<size_t>(g0.n) * g1.n, 0.0);
    psi.clock_label = std::move(clock_label);
    return psi;
}

double wavefunction_norm(const GridWavefunction& psi) {
    psi.check_shape();
    double measure = 1.0;
    for (const auto& g : psi.grids) measure *= g.spacing();
    double sum = 0.0;
    for (const auto& v : psi.values) sum += std::norm(v);
    return std::sqrt(sum * measure);
}

std::complex<double> slice_inner_product(
    const std::vector<std::complex<double>>& a,
    const std::vector<std::complex<double>>& b, double spacing) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner product size mismatch");
    std::complex<double> sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum * spacing;
}

}  // namespace dlab
