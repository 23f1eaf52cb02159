#include "gdnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace gdnls {

const Field& Trajectory::at_time(double t) const {
    return snapshots[index_of_time(t)];
}

std::size_t Trajectory::index_of_time(double t) const {
    const double span = times.empty() ? 1.0 : std::max(1.0, std::abs(times.back() - times.front()));
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - t) <= 1e-9 * span) return i;
    }
    throw std::invalid_argument("Trajectory: no snapshot at t = " + std::to_string(t));
}

Field rhs_original(const Field& u, double sigma) {
    validate(u);
    const Field uxx = spatial_derivative(u, 2);
    const Field ux = spatial_derivative(u, 1);
    Field out = zero_field(u.grid, u.time);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double amp = std::pow(std::abs(u.values[j]), 2.0 * sigma);
        out.values[j] = Complex{0.0, 1.0} * uxx.values[j] - amp * ux.values[j];
    }
    return out;
}

Field f1(const Field& w, double sigma) {
    validate(w);
    const double prefactor = sigma * (sigma - 1.0);
    if (prefactor == 0.0) return zero_field(w.grid, w.time);
    const Field wx = spatial_derivative(w, 1);
    Field integrand = zero_field(w.grid, w.time);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex z = std::conj(w.values[j]) * wx.values[j];
        const double amp = std::pow(std::abs(w.values[j]), 2.0 * sigma - 4.0);
        integrand.values[j] = (z * z * amp).imag();
    }
    const Field accumulated = cumulative_integral(integrand);
    Field out = zero_field(w.grid, w.time);
    for (std::size_t j = 0; j < w.size(); ++j) {
        out.values[j] = prefactor * w.values[j] * accumulated.values[j].real();
    }
    return out;
}

Field f2(const Field& w, double sigma) {
    validate(w);
    Field out = zero_field(w.grid, w.time);
    const double c = -(sigma + 1.0) / 4.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        out.values[j] = c * std::pow(std::abs(w.values[j]), 4.0 * sigma) * w.values[j];
    }
    return out;
}

Field f3(const Field& w, double sigma) {
    validate(w);
    const Field wx = spatial_derivative(w, 1);
    Field out = zero_field(w.grid, w.time);
    const Complex ik{0.0, sigma};
    for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex wj = w.values[j];
        out.values[j] = ik * std::pow(std::abs(wj), 2.0 * sigma - 2.0) * wj * wj *
                        std::conj(wx.values[j]);
    }
    return out;
}

Field rhs_gauged(const Field& w, double sigma) {
    validate(w);
    const Field wxx = spatial_derivative(w, 2);
    const Field n1 = f1(w, sigma);
    const Field n2 = f2(w, sigma);
    const Field n3 = f3(w, sigma);
    Field out = zero_field(w.grid, w.time);
    const Complex i{0.0, 1.0};
    for (std::size_t j = 0; j < w.size(); ++j) {
        out.values[j] = i * wxx.values[j] -
                        i * (n1.values[j] + n2.values[j] + n3.values[j]);
    }
    return out;
}

Field nonlinearity(const Field& f, RhsKind kind, double sigma) {
    switch (kind) {
        case RhsKind::linear:
            return zero_field(f.grid, f.time);
        case RhsKind::original: {
            const Field fx = spatial_derivative(f, 1);
            Field out = zero_field(f.grid, f.time);
            for (std::size_t j = 0; j < f.size(); ++j) {
                out.values[j] =
                    -std::pow(std::abs(f.values[j]), 2.0 * sigma) * fx.values[j];
            }
            return out;
        }
        case RhsKind::gauged: {
            const Field n1 = f1(f, sigma);
            const Field n2 = f2(f, sigma);
            const Field n3 = f3(f, sigma);
            Field out = zero_field(f.grid, f.time);
            const Complex mi{0.0, -1.0};
            for (std::size_t j = 0; j < f.size(); ++j) {
                out.values[j] = mi * (n1.values[j] + n2.values[j] + n3.values[j]);
            }
            return out;
        }
    }
    return zero_field(f.grid, f.time);
}

namespace {

// Spectral state helpers for the integrating-factor stepper.  Raw (unscaled)
// FFT coefficients are used internally; physical values are recovered with a
// 1/M backward transform.
struct StepWorkspace {
    std::size_t m;
    std::vector<Complex> half_phase;   // exp(-i dt/2 xi^2)
    std::vector<Complex> full_phase;   // exp(-i dt   xi^2)
    std::vector<Complex> scratch_hat;
    Field scratch_field;

    StepWorkspace(const Grid& grid, double dt)
        : m(grid.m), half_phase(grid.m), full_phase(grid.m),
          scratch_hat(grid.m), scratch_field(zero_field(grid)) {
        for (std::size_t k = 0; k < m; ++k) {
            const double xi2 = grid.xi(k) * grid.xi(k);
            const double h = -0.5 * dt * xi2;
            half_phase[k] = Complex{std::cos(h), std::sin(h)};
            full_phase[k] = half_phase[k] * half_phase[k];
        }
    }
};

std::vector<Complex> to_hat(const Field& f) {
    std::vector<Complex> hat(f.grid.m);
    detail::fft_forward(f.grid.m, f.values.data(), hat.data());
    return hat;
}

void to_physical(const Grid& grid, const std::vector<Complex>& hat, Field& out, double time) {
    detail::fft_backward(grid.m, hat.data(), out.values.data());
    const double inv_m = 1.0 / static_cast<double>(grid.m);
    for (auto& v : out.values) v *= inv_m;
    out.time = time;
}

// hat of the nonlinearity evaluated on the physical state described by `hat`.
std::vector<Complex> nonlinear_hat(const Grid& grid, const std::vector<Complex>& hat,
                                   double time, RhsKind kind, double sigma,
                                   StepWorkspace& ws) {
    to_physical(grid, hat, ws.scratch_field, time);
    const Field n = nonlinearity(ws.scratch_field, kind, sigma);
    return to_hat(n);
}

std::vector<Complex> step_if_rk4_hat(const Grid& grid, const std::vector<Complex>& what,
                                     double t, double dt, RhsKind kind, double sigma,
                                     StepWorkspace& ws) {
    const std::size_t m = grid.m;
    const auto& e = ws.half_phase;
    const auto& e2 = ws.full_phase;

    const auto na = nonlinear_hat(grid, what, t, kind, sigma, ws);

    std::vector<Complex> stage(m);
    for (std::size_t k = 0; k < m; ++k) stage[k] = e[k] * (what[k] + 0.5 * dt * na[k]);
    const auto nb = nonlinear_hat(grid, stage, t + 0.5 * dt, kind, sigma, ws);

    for (std::size_t k = 0; k < m; ++k) stage[k] = e[k] * what[k] + 0.5 * dt * nb[k];
    const auto nc = nonlinear_hat(grid, stage, t + 0.5 * dt, kind, sigma, ws);

    for (std::size_t k = 0; k < m; ++k) stage[k] = e2[k] * what[k] + dt * e[k] * nc[k];
    const auto nd = nonlinear_hat(grid, stage, t + dt, kind, sigma, ws);

    std::vector<Complex> out(m);
    const double sixth = dt / 6.0;
    for (std::size_t k = 0; k < m; ++k) {
        out[k] = e2[k] * what[k] +
                 sixth * (e2[k] * na[k] + 2.0 * e[k] * (nb[k] + nc[k]) + nd[k]);
    }
    return out;
}

void check_finite(const std::vector<Complex>& hat, double t) {
    for (const auto& v : hat) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw BlowupError(t);
    }
}

}  // namespace

Field step_if_rk4(const Field& f, double dt, RhsKind kind, double sigma) {
    validate(f);
    StepWorkspace ws(f.grid, dt);
    auto what = to_hat(f);
    what = step_if_rk4_hat(f.grid, what, f.time, dt, kind, sigma, ws);
    check_finite(what, f.time + dt);
    Field out = zero_field(f.grid, f.time + dt);
    to_physical(f.grid, what, out, f.time + dt);
    return out;
}

Trajectory evolve(const Field& f0, double t0, double t1, const SolverConfig& cfg) {
    validate(f0);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    const double span = t1 - t0;
    if (cfg.direction == Direction::forward && span < 0.0) {
        throw std::invalid_argument("evolve: forward run requires t1 >= t0");
    }
    if (cfg.direction == Direction::backward && span > 0.0) {
        throw std::invalid_argument("evolve: backward run requires t1 <= t0");
    }

    Trajectory traj;
    traj.grid = f0.grid;
    traj.config = cfg;

    Field start = f0;
    start.time = t0;
    if (span == 0.0) {
        traj.times.push_back(t0);
        traj.snapshots.push_back(start);
        return traj;
    }

    const std::size_t stride = std::max<std::size_t>(1, cfg.store_every);
    std::size_t steps = static_cast<std::size_t>(std::ceil(std::abs(span) / cfg.dt - 1e-9));
    steps = std::max<std::size_t>(steps, 1);
    if (steps % stride != 0) steps += stride - steps % stride;
    const double dt = span / static_cast<double>(steps);  // signed

    StepWorkspace ws(f0.grid, dt);
    auto what = to_hat(start);

    traj.times.push_back(t0);
    traj.snapshots.push_back(start);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        what = step_if_rk4_hat(f0.grid, what, t, dt, cfg.kind, cfg.sigma, ws);
        if ((i + 1) % stride == 0) {
            const double t_next = t0 + static_cast<double>(i + 1) * dt;
            check_finite(what, t_next);
            Field snap = zero_field(f0.grid, t_next);
            to_physical(f0.grid, what, snap, t_next);
            traj.times.push_back(t_next);
            traj.snapshots.push_back(std::move(snap));
        }
    }
    traj.times.back() = t1;
    traj.snapshots.back().time = t1;
    return traj;
}

double mass(const Field& u) {
    validate(u);
    double sum = 0.0;
    for (const auto& v : u.values) sum += std::norm(v);
    return u.grid.dx() * sum;
}

Field scaling_transform(const Field& u, double lambda, double sigma) {
    validate(u);
    bool ok = lambda > 0.0;
    if (ok) {
        double r = lambda;
        while (r > 1.0) r /= 2.0;
        while (r < 1.0) r *= 2.0;
        ok = (r == 1.0);
    }
    if (!ok) throw std::invalid_argument("scaling_transform: lambda must be a power of two");

    Grid scaled = make_grid(u.grid.x_min / lambda, u.grid.x_max / lambda, u.grid.m);
    Field out = zero_field(scaled, u.time);
    const double amp = std::pow(lambda, 1.0 / (2.0 * sigma));
    // lambda * x'_j = x_j, so samples transfer index to index.
    for (std::size_t j = 0; j < u.size(); ++j) out.values[j] = amp * u.values[j];
    return out;
}

double critical_exponent(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("critical_exponent: sigma must be positive");
    return 0.5 - 0.5 / sigma;
}

}  // namespace gdnls
