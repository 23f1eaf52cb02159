#pragma once

#include <vector>

#include "gdnls/bump.hpp"
#include "gdnls/field.hpp"

namespace gdnls {

/// Fourier coefficients in grid storage order (slot k holds mode grid.mode(k)).
using Spectrum = std::vector<Complex>;

/// Continuum-consistent discrete Fourier transform,
///   fhat(xi_m) = dx * sum_j f(x_j) * exp(-i xi_m x_j).
Spectrum forward_transform(const Field& f);

/// Inverse of forward_transform, f(x_j) = (1/L) * sum_m fhat(xi_m) * exp(i xi_m x_j).
Field inverse_transform(const Grid& grid, const Spectrum& spectrum, double time = 0.0);

/// Discrete H^s norm, ((1/L) sum_m <xi_m>^{2s} |fhat(xi_m)|^2)^{1/2}.
double sobolev_norm(const Field& f, double s);

/// Homogeneous version with weight |xi_m|^{2s}; the zero mode contributes nothing.
double homogeneous_sobolev_norm(const Field& f, double s);

/// (dx sum_j |f(x_j)|^p)^{1/p}; p = infinity gives max |f|.
double lebesgue_norm(const Field& f, double p);

/// Littlewood-Paley projector family.
enum class LpKind {
    at,   ///< phi_N (N = 1 means the inhomogeneous block P_{<=1})
    leq,  ///< phi_{<=N}
    ll,   ///< phi_{<=N/2^{m_star}}, the concrete reading of "<< N"
    geq,  ///< 1 - phi_{<=N/2}
    sim,  ///< phi_{<=4N} - phi_{<=N/8}
};

/// Applies the requested dyadic frequency cutoff.  Rejects non-dyadic N.
/// m_star only affects kind = ll; the default matches k = 3 (ceil(log2(16k)) = 6).
Field lp_project(const Field& f, double n, LpKind kind, int m_star = 6);

/// Dyadic blocks {1, 2, ..., N*} with N* the first power of two >= grid.xi_max(),
/// so that P_{<=1} + sum_{N>=2} P_N resolves the identity on the grid.
std::vector<double> grid_dyadic_blocks(const Grid& grid);

/// Fourier multiplier <xi> = (1 + xi^2)^{1/2}.
Field bracket_derivative(const Field& f);

/// Spectral d^order/dx^order for order in {1, 2}; odd orders zero the Nyquist mode.
Field spatial_derivative(const Field& f, int order);

/// Free Schroedinger propagator: multiplier exp(-i t xi^2); advances the time tag by t.
Field free_propagate(const Field& f, double t);

/// Trapezoid-rule cumulative integral F(x_j) = int_{x_min}^{x_j} f dy of the real part.
/// F(x_min) = 0, and F is nondecreasing when f >= 0.
Field cumulative_integral(const Field& f);

/// Relative spectral mass above |xi| >= xi_max/2; experiments assert this stays
/// below their resolution budget so physical-space products do not alias.
double spectral_tail_fraction(const Field& f);

}  // namespace gdnls
