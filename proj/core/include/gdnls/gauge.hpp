#pragma once

#include "gdnls/field.hpp"

namespace gdnls {

/// Parameters of the gauge transform w = exp(-i a int_{x_min}^x |u|^{2 sigma} dy) u.
/// a = -1/2 removes the |w|^{2 sigma} dw/dx term from the transformed equation.
struct GaugeParams {
    double a = -0.5;
    double sigma = 3.0;  ///< nonlinearity power, > 0
};

/// theta(x) = int_{x_min}^x |u|^{2 sigma} dy (trapezoid rule); real, nondecreasing.
Field gauge_phase(const Field& u, double sigma);

/// w = exp(-i a theta) u.  Preserves |u| pointwise.
Field gauge_forward(const Field& u, const GaugeParams& params);

/// Inverse transform; uses |w| = |u|, so u = exp(+i a int |w|^{2 sigma}) w.
Field gauge_inverse(const Field& w, const GaugeParams& params);

/// Scalars controlling the distance of exp(i theta/2) from 1:
/// phase_sup = ||w||_{L^{2k}}^{2k} bounds |theta| and phase_deriv_sup =
/// ||w||_{L^inf}^{2k} bounds |d theta/dx|.
struct GaugeTailBounds {
    double phase_sup = 0.0;
    double phase_deriv_sup = 0.0;
};

GaugeTailBounds gauge_tail_bounds(const Field& w, int k);

}  // namespace gdnls
