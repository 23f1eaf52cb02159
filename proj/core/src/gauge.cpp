#include "gdnls/gauge.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gdnls/spectral.hpp"

namespace gdnls {

namespace {
Field abs_power(const Field& u, double p) {
    Field out = zero_field(u.grid, u.time);
    for (std::size_t j = 0; j < u.size(); ++j) {
        out.values[j] = std::pow(std::abs(u.values[j]), p);
    }
    return out;
}
}  // namespace

Field gauge_phase(const Field& u, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gauge_phase: sigma must be positive");
    return cumulative_integral(abs_power(u, 2.0 * sigma));
}

Field gauge_forward(const Field& u, const GaugeParams& params) {
    validate(u);
    const Field theta = gauge_phase(u, params.sigma);
    Field out = u;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double phi = -params.a * theta.values[j].real();
        out.values[j] *= Complex{std::cos(phi), std::sin(phi)};
    }
    return out;
}

Field gauge_inverse(const Field& w, const GaugeParams& params) {
    // |w| = |u|, so the accumulated phase can be rebuilt from w itself.
    GaugeParams undo{-params.a, params.sigma};
    return gauge_forward(w, undo);
}

GaugeTailBounds gauge_tail_bounds(const Field& w, int k) {
    validate(w);
    const double p = 2.0 * static_cast<double>(k);
    GaugeTailBounds out;
    out.phase_sup = std::pow(lebesgue_norm(w, p), p);
    out.phase_deriv_sup = std::pow(lebesgue_norm(w, std::numeric_limits<double>::infinity()), p);
    return out;
}

}  // namespace gdnls
