#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "gdnls/dynamics.hpp"
#include "gdnls/gauge.hpp"
#include "oracles.hpp"

using namespace gdnls;
using std::numbers::pi;

namespace {

Field gaussian(const Grid& g, double a) {
    return make_field(g, [a](double x) { return Complex{a * std::exp(-x * x), 0.0}; });
}

Field modulated(const Grid& g, double a, double carrier) {
    return make_field(g, [a, carrier](double x) {
        return a * std::exp(-x * x) * Complex{std::cos(carrier * x), std::sin(carrier * x)};
    });
}

}  // namespace

TEST_CASE("rhs_original on closed forms") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    const Field constant = make_field(g, [](double) { return Complex{0.4, -0.2}; });
    CHECK(max_abs(rhs_original(constant, 3.0)) <= 1e-13);

    const double eps = 0.3, xi0 = g.xi_of_mode(4);
    const Field wave = make_field(g, [&](double x) {
        return eps * Complex{std::cos(xi0 * x), std::sin(xi0 * x)};
    });
    const Complex factor =
        Complex{0.0, -xi0 * xi0} + Complex{0.0, -xi0 * std::pow(eps, 6.0)};
    const Field expected = factor * wave;
    CHECK(sobolev_norm(rhs_original(wave, 3.0) - expected, 0.0) <=
          1e-12 * sobolev_norm(expected, 0.0));
}

TEST_CASE("rhs_original matches a finite-difference oracle") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    const double a = 0.5, c = 2.0;
    auto profile = [a, c](double x) {
        return a * std::exp(-x * x) * Complex{std::cos(c * x), std::sin(c * x)};
    };
    const Field u = make_field(g, profile);
    const Field rhs = rhs_original(u, 3.0);

    const double h = g.dx() / 32.0;
    double err = 0.0;
    for (std::size_t j = 0; j < g.m; j += 3) {
        const double x = g.x(j);
        const Complex fd = Complex{0.0, 1.0} * oracles::fd_derivative2(profile, x, h) -
                           std::pow(std::abs(profile(x)), 6.0) *
                               oracles::fd_derivative1(profile, x, h);
        err = std::max(err, std::abs(rhs.values[j] - fd));
    }
    CHECK(err <= 1e-6);
}

TEST_CASE("f1 vanishes for real and constant fields") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    const Field real_field = gaussian(g, 0.8);
    CHECK(max_abs(f1(real_field, 3.0)) <= 1e-13);
    const Field constant = make_field(g, [](double) { return Complex{0.5, 0.2}; });
    CHECK(max_abs(f1(constant, 3.0)) <= 1e-13);
    CHECK(max_abs(f1(modulated(g, 0.5, 1.0), 1.0)) == 0.0);  // sigma(sigma-1) = 0
}

TEST_CASE("f1 matches a composite-Simpson oracle") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 2048);
    const double a = 0.3;
    const Field w = modulated(g, a, 1.0);
    const Field out = f1(w, 3.0);

    // for a e^{-x^2} e^{ix}: Im[(conj(w) w')^2 |w|^2] = -4 y |w|^6
    auto integrand = [a](double y) {
        return -4.0 * y * std::pow(a, 6.0) * std::exp(-6.0 * y * y);
    };
    double err = 0.0;
    for (std::size_t j = 0; j < g.m; j += 41) {
        const double x = g.x(j);
        const double theta = oracles::simpson_cumulative(integrand, g.x_min, x, 4096);
        const Complex expected = 6.0 * w.values[j] * theta;
        err = std::max(err, std::abs(out.values[j] - expected));
    }
    CHECK(err <= 1e-6);
}

TEST_CASE("f2 closed forms and the gauge coefficient identity") {
    const Grid g = make_grid(-pi, pi, 64);
    const Field one = make_field(g, [](double) { return Complex{1.0, 0.0}; });
    const Field out = f2(one, 3.0);
    for (std::size_t j = 0; j < g.m; ++j) {
        CHECK(out.values[j].real() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(out.values[j].imag() == 0.0);
    }
    CHECK(max_abs(f2(zero_field(g), 3.0)) == 0.0);

    // the quintic coefficient of the transformed equation at a = -1/2 moves to
    // the right side as -(sigma+1)/4
    const double gauge_a = -0.5;
    for (double sigma : {1.0, 2.0, 3.0, 4.5}) {
        const double lhs_coeff = gauge_a * (gauge_a * sigma - 0.5);
        CHECK(std::abs(lhs_coeff - (sigma + 1.0) / 4.0) <= 1e-15);
    }
}

TEST_CASE("f3 closed forms and a finite-difference oracle") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    const Field constant = make_field(g, [](double) { return Complex{0.7, -0.4}; });
    CHECK(max_abs(f3(constant, 3.0)) <= 1e-13);

    const double eps = 0.4, xi0 = g.xi_of_mode(5);
    const Field wave = make_field(g, [&](double x) {
        return eps * Complex{std::cos(xi0 * x), std::sin(xi0 * x)};
    });
    const Field expected = (3.0 * xi0 * std::pow(eps, 7.0) / eps) * wave;
    CHECK(sobolev_norm(f3(wave, 3.0) - expected, 0.0) <= 1e-12 * sobolev_norm(expected, 0.0));

    const double a = 0.5, c = 2.0;
    auto profile = [a, c](double x) {
        return a * std::exp(-x * x) * Complex{std::cos(c * x), std::sin(c * x)};
    };
    const Field w = make_field(g, profile);
    const Field out = f3(w, 3.0);
    const double h = g.dx() / 32.0;
    double err = 0.0;
    for (std::size_t j = 0; j < g.m; j += 3) {
        const double x = g.x(j);
        const Complex wx = oracles::fd_derivative1(profile, x, h);
        const Complex fd = Complex{0.0, 3.0} * std::pow(std::abs(profile(x)), 4.0) *
                           profile(x) * profile(x) * std::conj(wx);
        err = std::max(err, std::abs(out.values[j] - fd));
    }
    CHECK(err <= 1e-6);
}

TEST_CASE("rhs_gauged closed form and bitwise assembly") {
    const Grid g = make_grid(-pi, pi, 64);
    CHECK(max_abs(rhs_gauged(zero_field(g), 3.0)) == 0.0);

    const double c = 0.8;
    const Field constant = make_field(g, [&](double) { return Complex{c, 0.0}; });
    const Field out = rhs_gauged(constant, 3.0);
    const double expected = std::pow(c, 13.0);  // i |c|^{12} c
    for (std::size_t j = 0; j < g.m; ++j) {
        CHECK(std::abs(out.values[j] - Complex{0.0, expected}) <= 1e-13);
    }

    const Field w = modulated(g, 0.5, 2.0);
    const Field direct = rhs_gauged(w, 3.0);
    const Field wxx = spatial_derivative(w, 2);
    const Field n1 = f1(w, 3.0), n2 = f2(w, 3.0), n3 = f3(w, 3.0);
    for (std::size_t j = 0; j < g.m; ++j) {
        const Complex assembled =
            Complex{0.0, 1.0} * wxx.values[j] -
            Complex{0.0, 1.0} * (n1.values[j] + n2.values[j] + n3.values[j]);
        CHECK(direct.values[j] == assembled);  // bitwise
    }
}

TEST_CASE("integrating-factor step") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 512);
    CHECK(max_abs(step_if_rk4(zero_field(g), 1e-2, RhsKind::gauged, 3.0)) == 0.0);

    const Field f = modulated(g, 0.2, 3.0);
    const Field lin = step_if_rk4(f, 1e-2, RhsKind::linear, 3.0);
    const Field free_step = free_propagate(f, 1e-2);
    CHECK(sobolev_norm(lin - free_step, 0.0) <= 1e-12 * sobolev_norm(f, 0.0));
}

TEST_CASE("fourth-order convergence of the stepper") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 1024);
    const Field w0 = modulated(g, 0.25, 8.0);
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.kind = RhsKind::gauged;
    cfg.store_every = 0;

    auto endpoint = [&](double dt) {
        SolverConfig c = cfg;
        c.dt = dt;
        return evolve(w0, 0.0, 0.1, c).snapshots.back();
    };
    const Field a = endpoint(1e-3);
    const Field b = endpoint(5e-4);
    const Field c = endpoint(2.5e-4);
    const double e1 = sobolev_norm(a - b, 1.0);
    const double e2 = sobolev_norm(b - c, 1.0);
    const double ratio = e1 / e2;
    CHECK(ratio >= 16.0 * 0.8);
    CHECK(ratio <= 16.0 * 1.2);
}

TEST_CASE("evolve bookkeeping") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 128);
    const Field u = gaussian(g, 0.1);
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.kind = RhsKind::gauged;
    cfg.dt = 1e-2;

    const Trajectory still = evolve(u, 1.5, 1.5, cfg);
    CHECK(still.size() == 1);
    CHECK(still.times[0] == 1.5);

    cfg.store_every = 4;
    const Trajectory run = evolve(u, 0.0, 0.2, cfg);
    CHECK(run.times.front() == 0.0);
    CHECK(run.times.back() == 0.2);
    for (std::size_t i = 1; i < run.size(); ++i) CHECK(run.times[i] > run.times[i - 1]);

    cfg.direction = Direction::backward;
    CHECK_THROWS_AS(evolve(u, 0.0, 0.2, cfg), std::invalid_argument);
}

TEST_CASE("backward-then-forward reversibility") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 512);
    const Field u = gaussian(g, 0.1);
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.kind = RhsKind::gauged;
    cfg.dt = 1e-3;
    cfg.store_every = 0;

    const Trajectory fwd = evolve(u, 0.0, 0.2, cfg);
    cfg.direction = Direction::backward;
    const Trajectory back = evolve(fwd.snapshots.back(), 0.2, 0.0, cfg);
    CHECK(sobolev_norm(back.snapshots.back() - u, 1.0) <= 1e-8);
}

TEST_CASE("mass behavior") {
    const Grid g = make_grid(-pi, pi, 64);
    CHECK(mass(zero_field(g)) == 0.0);
    const double eps = 0.3;
    const Field wave = make_field(g, [&](double x) {
        return eps * Complex{std::cos(2.0 * x), std::sin(2.0 * x)};
    });
    CHECK(mass(wave) == doctest::Approx(eps * eps * g.length()).epsilon(1e-13));

    const Grid gg = make_grid(-16 * pi, 16 * pi, 512);
    const Field u = gaussian(gg, 0.1);
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.kind = RhsKind::original;
    cfg.dt = 1e-3;
    cfg.store_every = 0;
    const Trajectory run = evolve(u, 0.0, 1.0, cfg);
    CHECK(std::abs(mass(run.snapshots.back()) - mass(u)) <= 1e-10 * mass(u));
}

TEST_CASE("numerical blowup is surfaced with its time") {
    const Grid g = make_grid(-4 * pi, 4 * pi, 64);
    const Field huge = gaussian(g, 40.0);
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.kind = RhsKind::gauged;
    cfg.dt = 0.5;
    CHECK_THROWS_AS(evolve(huge, 0.0, 5.0, cfg), BlowupError);
}

TEST_CASE("gauge conjugacy of the two flows (short run)") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 512);
    const Field u0 = modulated(g, 0.1, 8.0);
    const GaugeParams params{-0.5, 3.0};
    SolverConfig cfg;
    cfg.sigma = 3.0;
    cfg.dt = 1e-3;
    cfg.store_every = 0;

    cfg.kind = RhsKind::original;
    const Trajectory u_run = evolve(u0, 0.0, 0.1, cfg);
    cfg.kind = RhsKind::gauged;
    const Trajectory w_run = evolve(gauge_forward(u0, params), 0.0, 0.1, cfg);
    const double gap =
        sobolev_norm(gauge_forward(u_run.snapshots.back(), params) - w_run.snapshots.back(), 1.0);
    CHECK(gap <= 1e-6);
}

TEST_CASE("scaling transform") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 512);
    const Field u = gaussian(g, 0.1);

    const Field same = scaling_transform(u, 1.0, 3.0);
    CHECK(same.grid == u.grid);
    CHECK(sobolev_norm(same - u, 1.0) == 0.0);

    const double sc = critical_exponent(3.0);
    const Field scaled = scaling_transform(u, 2.0, 3.0);
    CHECK(homogeneous_sobolev_norm(scaled, sc) ==
          doctest::Approx(homogeneous_sobolev_norm(u, sc)).epsilon(1e-10));

    CHECK_THROWS_AS(scaling_transform(u, 3.0, 3.0), std::invalid_argument);
}

TEST_CASE("two-grid scaling covariance of solutions") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 512);
    const Field u = gaussian(g, 0.1);
    const double lambda = 2.0, sigma = 3.0, t_scaled = 0.1;

    SolverConfig cfg;
    cfg.sigma = sigma;
    cfg.kind = RhsKind::original;
    cfg.store_every = 0;
    cfg.dt = 1e-3;
    const Trajectory coarse = evolve(u, 0.0, lambda * lambda * t_scaled, cfg);
    cfg.dt = 1e-3 / (lambda * lambda);
    const Trajectory fine = evolve(scaling_transform(u, lambda, sigma), 0.0, t_scaled, cfg);

    const Field expected = scaling_transform(coarse.snapshots.back(), lambda, sigma);
    CHECK(sobolev_norm(fine.snapshots.back() - expected, 1.0) <= 1e-5);
}

TEST_CASE("critical exponent") {
    CHECK(critical_exponent(1.0) == 0.0);
    CHECK(critical_exponent(3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    double prev = -1.0;
    for (double sigma : {0.5, 1.0, 2.0, 4.0, 16.0, 1e6}) {
        const double sc = critical_exponent(sigma);
        CHECK(sc > prev);
        CHECK(sc < 0.5);
        prev = sc;
    }
}
