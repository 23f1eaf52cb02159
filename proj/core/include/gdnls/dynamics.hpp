#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gdnls/field.hpp"
#include "gdnls/spectral.hpp"

namespace gdnls {

/// Which right-hand side the integrator advances.
enum class RhsKind {
    original,  ///< du/dt = i u_xx - |u|^{2 sigma} u_x
    gauged,    ///< dw/dt = i w_xx - i (F1 + F2 + F3)(w)
    linear,    ///< free equation (nonlinearity off); used by consistency checks
};

enum class Direction { forward, backward };

struct SolverConfig {
    double sigma = 3.0;  ///< nonlinearity power; sigma = k for the gauged equation
    double dt = 1e-3;
    RhsKind kind = RhsKind::gauged;
    std::size_t store_every = 1;
    Direction direction = Direction::forward;
};

/// Time-ordered snapshots of one solution on a common grid.
struct Trajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<Field> snapshots;
    SolverConfig config;

    std::size_t size() const { return snapshots.size(); }
    const Field& at_time(double t) const;  ///< snapshot with matching time tag
    std::size_t index_of_time(double t) const;
};

/// Thrown when an integration step produces non-finite values.
struct BlowupError : std::runtime_error {
    double time;
    explicit BlowupError(double t)
        : std::runtime_error("numerical blowup at t = " + std::to_string(t)), time(t) {}
};

/// du/dt for the original equation: i u_xx - |u|^{2 sigma} u_x.
Field rhs_original(const Field& u, double sigma);

/// F1(w) = sigma (sigma - 1) w Im int_{x_min}^x |w|^{2 sigma - 4} (conj(w) w_y)^2 dy.
/// Zero when sigma (sigma - 1) = 0.
Field f1(const Field& w, double sigma);

/// F2(w) = -(sigma + 1)/4 |w|^{4 sigma} w.
Field f2(const Field& w, double sigma);

/// F3(w) = i sigma |w|^{2 sigma - 2} w^2 conj(w)_x.
Field f3(const Field& w, double sigma);

/// dw/dt for the gauge-transformed equation: i w_xx - i (F1 + F2 + F3).
Field rhs_gauged(const Field& w, double sigma);

/// Nonlinear part N with du/dt = i u_xx + N(u); N = 0 for RhsKind::linear.
Field nonlinearity(const Field& f, RhsKind kind, double sigma);

/// One classical fourth-order integrating-factor step on the spectral profile.
/// The linear phase is applied exactly, so the step is exact when the
/// nonlinearity vanishes.  Stability heuristic: |dt| <= 0.1 / (1 + ||f||_inf^{2k}).
Field step_if_rk4(const Field& f, double dt, RhsKind kind, double sigma);

/// Integrates from t0 to t1 (backward when t1 < t0), storing a snapshot every
/// store_every steps; both endpoints are included.  The step count is rounded
/// to a multiple of store_every, shrinking dt slightly if needed.
Trajectory evolve(const Field& f0, double t0, double t1, const SolverConfig& cfg);

/// ||u||_{L^2}^2; conserved by both equations.
double mass(const Field& u);

/// u_lambda(0, x) = lambda^{1/(2 sigma)} u(0, lambda x) on the box shrunk by lambda.
/// lambda must be a power of two so the rescaled lattice embeds exactly.
Field scaling_transform(const Field& u, double lambda, double sigma);

/// s_c = 1/2 - 1/(2 sigma).
double critical_exponent(double sigma);

}  // namespace gdnls
