#ifndef DLAB_CASES_HPP
#define DLAB_CASES_HPP

#include "dlab/model.hpp"

// The concrete two-dimensional constraint families used throughout the
// laboratory, in scaled form H = -p0^2 + p1^2 + V(q):
//
//   dilaton_k:    V = 2c e^{6W + f} - k e^{4W}            over (W, f)
//   dilaton_l:    V = 2c e^{6W + f} + l^2 e^{-2f}         over (W, f)
//   xy:           V = zeta e^{2x}                         over (x, y)
//   taub:         V = 2cbar e^{6W} + l^2 e^{-2f}          over (W, f)
//   uv:           V = eta m^2 (constant)                  over (u, v)

namespace dlab {

inline MinisuperspaceModel make_dilaton_k_model(double c, double k) {
    return MinisuperspaceModel({-1, 1},
                               {{2.0 * c, {6, 1}}, {-k, {4, 0}}},
                               {"Omega", "phi"});
}

inline MinisuperspaceModel make_dilaton_lambda_model(double c, double lambda) {
    return MinisuperspaceModel({-1, 1},
                               {{2.0 * c, {6, 1}}, {lambda * lambda, {0, -2}}},
                               {"Omega", "phi"});
}

inline MinisuperspaceModel make_xy_model(double zeta) {
    return MinisuperspaceModel({-1, 1}, {{zeta, {2, 0}}}, {"x", "y"});
}

inline MinisuperspaceModel make_taub_model(double cbar, double lambda) {
    return MinisuperspaceModel(
        {-1, 1}, {{2.0 * cbar, {6, 0}}, {lambda * lambda, {0, -2}}},
        {"Omega", "phi"});
}

inline MinisuperspaceModel make_uv_model(double eta, double m2) {
    return MinisuperspaceModel({-1, 1}, {{eta * m2, {0, 0}}}, {"u", "v"});
}

}  // namespace dlab

#endif
