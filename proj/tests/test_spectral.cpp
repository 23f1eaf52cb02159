#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "gdnls/spectral.hpp"
#include "oracles.hpp"

using namespace gdnls;
using std::numbers::pi;

namespace {

Field random_field(const Grid& grid, std::uint64_t seed) {
    auto rng = oracles::rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field f = zero_field(grid);
    for (auto& v : f.values) v = Complex{gauss(rng), gauss(rng)};
    return f;
}

Field plane_wave(const Grid& grid, double xi0, Complex amp = {1.0, 0.0}) {
    return make_field(grid, [&](double x) {
        return amp * Complex{std::cos(xi0 * x), std::sin(xi0 * x)};
    });
}

}  // namespace

TEST_CASE("grid construction and frequency lattice") {
    const Grid g = make_grid(-pi, pi, 4);
    CHECK(g.dx() == doctest::Approx(pi / 2).epsilon(1e-15));
    // slots hold modes 0, 1, -2, -1
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(1) == 1);
    CHECK(g.mode(2) == -2);
    CHECK(g.mode(3) == -1);
    CHECK(g.xi(2) == doctest::Approx(-2.0).epsilon(1e-15));

    const Grid big = make_grid(-32 * pi, 32 * pi, 512);
    CHECK(big.dx() == doctest::Approx(pi / 8).epsilon(1e-15));
    CHECK(big.xi_max() == doctest::Approx(8.0).epsilon(1e-15));

    CHECK_THROWS_AS(make_grid(0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 8), std::invalid_argument);
}

TEST_CASE("forward transform: zero, plane wave, Parseval") {
    const Grid g = make_grid(-4 * pi, 4 * pi, 64);

    const auto zero_hat = forward_transform(zero_field(g));
    for (const auto& c : zero_hat) CHECK(std::abs(c) == 0.0);

    const double xi0 = g.xi_of_mode(3);
    const auto hat = forward_transform(plane_wave(g, xi0));
    for (std::size_t k = 0; k < g.m; ++k) {
        const double expected = g.mode(k) == 3 ? g.length() : 0.0;
        CHECK(std::abs(hat[k] - expected) <= 1e-12 * g.length());
    }

    const Field f = random_field(g, 7);
    double phys = 0.0;
    for (const auto& v : f.values) phys += std::norm(v);
    phys *= g.dx();
    double spec = 0.0;
    const auto fh = forward_transform(f);
    for (const auto& c : fh) spec += std::norm(c);
    spec /= g.length();
    CHECK(std::abs(phys - spec) <= 1e-12 * phys);
}

TEST_CASE("forward transform matches the continuum integral for a Gaussian") {
    const Grid g = make_grid(-32 * pi, 32 * pi, 512);
    const Field f = make_field(g, [](double x) { return Complex{std::exp(-x * x), 0.0}; });
    const auto hat = forward_transform(f);
    // quadrature oracle agrees with the closed form sqrt(pi) exp(-xi^2/4)
    for (double xi : {0.0, 0.5, 1.0, 2.5}) {
        const auto direct = oracles::integrate_complex(
            [xi](double x) {
                return Complex{std::exp(-x * x), 0.0} *
                       Complex{std::cos(-xi * x), std::sin(-xi * x)};
            },
            -12.0, 12.0);
        CHECK(std::abs(direct - oracles::gauss_hat(xi)) <= 1e-12);
    }
    for (std::size_t k = 0; k < g.m; ++k) {
        CHECK(std::abs(hat[k] - oracles::gauss_hat(g.xi(k))) <= 1e-10);
    }
}

TEST_CASE("inverse transform: delta spectrum and roundtrip") {
    const Grid g = make_grid(-2 * pi, 2 * pi, 32);

    Spectrum delta(g.m, Complex{0.0, 0.0});
    delta[g.slot(5)] = g.length();
    const Field wave = inverse_transform(g, delta);
    const Field expected = plane_wave(g, g.xi_of_mode(5));
    CHECK(sobolev_norm(wave - expected, 0.0) <= 1e-12 * sobolev_norm(expected, 0.0));

    const Field f = random_field(g, 11);
    const Field round = inverse_transform(g, forward_transform(f));
    CHECK(sobolev_norm(round - f, 0.0) <= 1e-12 * sobolev_norm(f, 0.0));
}

TEST_CASE("sobolev norms") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    CHECK(sobolev_norm(zero_field(g), 1.0) == 0.0);

    const double xi0 = g.xi_of_mode(6);
    const Field wave = plane_wave(g, xi0);
    for (double s : {0.0, 1.0, 2.5}) {
        const double expected = std::pow(1.0 + xi0 * xi0, s / 2.0) * std::sqrt(g.length());
        CHECK(sobolev_norm(wave, s) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(sobolev_norm(wave, 0.0) ==
          doctest::Approx(lebesgue_norm(wave, 2.0)).epsilon(1e-12));

    const Field gauss = make_field(g, [](double x) { return Complex{std::exp(-x * x), 0.0}; });
    const double h1 = std::sqrt(oracles::integrate(
        [](double xi) {
            const double a = oracles::gauss_hat(xi);
            return (1.0 + xi * xi) * a * a / (2.0 * pi);
        },
        -40.0, 40.0, 1e-14));
    CHECK(std::abs(sobolev_norm(gauss, 1.0) - h1) <= 1e-8);
}

TEST_CASE("homogeneous sobolev norms") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 256);
    const Field constant = make_field(g, [](double) { return Complex{2.0, 1.0}; });
    CHECK(homogeneous_sobolev_norm(constant, 0.5) <= 1e-13);

    const double xi0 = g.xi_of_mode(-5);
    const Field wave = plane_wave(g, xi0);
    CHECK(homogeneous_sobolev_norm(wave, 1.0 / 3.0) ==
          doctest::Approx(std::pow(std::abs(xi0), 1.0 / 3.0) * std::sqrt(g.length()))
              .epsilon(1e-12));

    const Field gauss = make_field(g, [](double x) { return Complex{std::exp(-x * x), 0.0}; });
    const double expected = std::sqrt(oracles::integrate(
        [](double xi) {
            const double a = oracles::gauss_hat(xi);
            return std::pow(std::abs(xi), 2.0 / 3.0) * a * a / (2.0 * pi);
        },
        -40.0, 40.0, 1e-14));
    CHECK(std::abs(homogeneous_sobolev_norm(gauss, 1.0 / 3.0) - expected) <= 1e-8);
}

TEST_CASE("lebesgue norms") {
    const Grid g = make_grid(-8 * pi, 8 * pi, 512);
    CHECK(lebesgue_norm(zero_field(g), 6.0) == 0.0);

    const Field constant = make_field(g, [](double) { return Complex{-1.5, 2.0}; });
    CHECK(lebesgue_norm(constant, 2.0) ==
          doctest::Approx(std::abs(Complex{-1.5, 2.0}) * std::sqrt(g.length())).epsilon(1e-13));

    const Field gauss = make_field(g, [](double x) { return Complex{std::exp(-x * x), 0.0}; });
    const double expected = std::pow(
        oracles::integrate([](double x) { return std::exp(-6.0 * x * x); }, -12.0, 12.0, 1e-14),
        1.0 / 6.0);
    CHECK(std::abs(lebesgue_norm(gauss, 6.0) - expected) <= 1e-10);

    CHECK(lebesgue_norm(gauss, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lebesgue_norm(gauss, 0.5), std::invalid_argument);
}

TEST_CASE("littlewood-paley projectors") {
    const Grid g = make_grid(-16 * pi, 16 * pi, 512);

    // phi(3/2) = 1/2 exactly by the symmetry of the concrete bump
    const Field wave3 = plane_wave(g, 3.0);
    const Field at2 = lp_project(wave3, 2.0, LpKind::at);
    CHECK(sobolev_norm(at2 - 0.5 * wave3, 0.0) <= 1e-13 * sobolev_norm(wave3, 0.0));

    const Field f = random_field(g, 3);
    Field sum = zero_field(g);
    for (double n : grid_dyadic_blocks(g)) sum = sum + lp_project(f, n, LpKind::at);
    CHECK(sobolev_norm(sum - f, 0.0) <= 1e-12 * sobolev_norm(f, 0.0));

    // geq kills content below its floor
    const Field low_wave = plane_wave(g, 1.0);
    CHECK(sobolev_norm(lp_project(low_wave, 8.0, LpKind::geq), 0.0) == 0.0);

    // disjoint blocks annihilate exactly
    const Field through = lp_project(lp_project(f, 8.0, LpKind::at), 2.0, LpKind::at);
    CHECK(sobolev_norm(through, 0.0) == 0.0);

    CHECK_THROWS_AS(lp_project(f, 3.0, LpKind::at), std::invalid_argument);

    // ll with the default m_star keeps only |xi| < 2N/2^6
    const Field ll = lp_project(plane_wave(g, 1.0), 8.0, LpKind::ll);
    CHECK(sobolev_norm(ll, 0.0) == 0.0);
    // sim is supported in [N/8, 8N] and is the identity on [N/4, 4N]
    const Field sim = lp_project(wave3, 4.0, LpKind::sim);
    CHECK(sobolev_norm(sim - wave3, 0.0) <= 1e-12 * sobolev_norm(wave3, 0.0));
}

TEST_CASE("bump partition of unity") {
    for (double r : {0.0, 0.3, 1.0, 1.5, 2.7, 5.0, 12.4, 31.9}) {
        double sum = bump_leq(r, 1.0);
        for (double n = 2.0; n <= 32.0; n *= 2.0) sum += bump_block(r, n);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(bump(0.7) == 1.0);
    CHECK(bump(2.2) == 0.0);
    CHECK(bump(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double r = 1.0; r < 2.0; r += 0.05) CHECK(bump(r) >= bump(r + 0.05));
}

TEST_CASE("bracket derivative") {
    const Grid g = make_grid(-4 * pi, 4 * pi, 128);
    const Field constant = make_field(g, [](double) { return Complex{0.3, -0.1}; });
    CHECK(sobolev_norm(bracket_derivative(constant) - constant, 0.0) <= 1e-13);

    const double xi0 = g.xi_of_mode(7);
    const Field wave = plane_wave(g, xi0);
    CHECK(sobolev_norm(bracket_derivative(wave) - std::sqrt(1.0 + xi0 * xi0) * wave, 0.0) <=
          1e-12 * sobolev_norm(wave, 0.0));

    const Field f = random_field(g, 5);
    CHECK(lebesgue_norm(bracket_derivative(f), 2.0) ==
          doctest::Approx(sobolev_norm(f, 1.0)).epsilon(1e-12));
}

TEST_CASE("spatial derivative") {
    const Grid g = make_grid(-pi, pi, 64);
    const Field constant = make_field(g, [](double) { return Complex{1.0, 1.0}; });
    CHECK(sobolev_norm(spatial_derivative(constant, 1), 0.0) <= 1e-14);

    const Field wave = plane_wave(g, 3.0);
    CHECK(sobolev_norm(spatial_derivative(wave, 1) - Complex{0.0, 3.0} * wave, 0.0) <=
          1e-12 * sobolev_norm(wave, 0.0));

    const Field sine = make_field(g, [](double x) { return Complex{std::sin(x), 0.0}; });
    const Field cosine = make_field(g, [](double x) { return Complex{std::cos(x), 0.0}; });
    CHECK(sobolev_norm(spatial_derivative(sine, 1) - cosine, 0.0) <= 1e-12);

    CHECK(sobolev_norm(spatial_derivative(sine, 2) + sine, 0.0) <= 1e-12);
    CHECK_THROWS_AS(spatial_derivative(sine, 3), std::invalid_argument);

    // odd derivative zeroes the unmatched Nyquist mode
    const Field nyquist = make_field(g, [&](double x) {
        return Complex{std::cos(g.xi_max() * x), 0.0};
    });
    CHECK(sobolev_norm(spatial_derivative(nyquist, 1), 0.0) <= 1e-12);
}

TEST_CASE("free propagator") {
    const Grid g = make_grid(-32 * pi, 32 * pi, 512);
    const Field f = random_field(g, 13);

    const Field still = free_propagate(f, 0.0);
    CHECK(sobolev_norm(still - f, 0.0) <= 1e-14 * sobolev_norm(f, 0.0));

    const double xi0 = g.xi_of_mode(9);
    const Field wave = plane_wave(g, xi0);
    const double t = 0.37;
    const Complex phase{std::cos(-t * xi0 * xi0), std::sin(-t * xi0 * xi0)};
    CHECK(sobolev_norm(free_propagate(wave, t) - phase * wave, 0.0) <=
          1e-12 * sobolev_norm(wave, 0.0));

    const Field gauss = make_field(g, [](double x) { return Complex{std::exp(-x * x), 0.0}; });
    const Field moved = free_propagate(gauss, 1.0);
    const Field closed = make_field(g, [](double x) { return oracles::gauss_free_evolution(x, 1.0); });
    double err = 0.0;
    for (std::size_t j = 0; j < g.m; ++j) {
        err = std::max(err, std::abs(moved.values[j] - closed.values[j]));
    }
    CHECK(err <= 1e-8);
    CHECK(moved.time == doctest::Approx(1.0));

    for (double s : {0.0, 1.0}) {
        CHECK(sobolev_norm(moved, s) == doctest::Approx(sobolev_norm(gauss, s)).epsilon(1e-12));
    }
    const Field twice = free_propagate(free_propagate(f, 0.21), 0.34);
    CHECK(sobolev_norm(twice - free_propagate(f, 0.55), 0.0) <= 1e-12 * sobolev_norm(f, 0.0));
}

TEST_CASE("cumulative integral") {
    const Grid g = make_grid(-pi, pi, 512);
    const Field zero = zero_field(g);
    CHECK(max_abs(cumulative_integral(zero)) == 0.0);

    const Field one = make_field(g, [](double) { return Complex{1.0, 0.0}; });
    const Field ramp = cumulative_integral(one);
    for (std::size_t j = 0; j < g.m; j += 37) {
        CHECK(ramp.values[j].real() == doctest::Approx(g.x(j) - g.x_min).epsilon(1e-13));
    }

    const Field cosine = make_field(g, [](double x) { return Complex{std::cos(x), 0.0}; });
    const Field anti = cumulative_integral(cosine);
    double err = 0.0;
    for (std::size_t j = 0; j < g.m; ++j) {
        err = std::max(err, std::abs(anti.values[j].real() -
                                     (std::sin(g.x(j)) - std::sin(g.x_min))));
    }
    CHECK(err <= 1e-4);

    const Field bumped = make_field(g, [](double x) { return Complex{x * x, 0.0}; });
    const Field mono = cumulative_integral(bumped);
    for (std::size_t j = 1; j < g.m; ++j) {
        CHECK(mono.values[j].real() >= mono.values[j - 1].real());
    }
}

TEST_CASE("spectral tail fraction flags unresolved fields") {
    const Grid g = make_grid(-4 * pi, 4 * pi, 64);
    const Field smooth = plane_wave(g, 1.0);
    CHECK(spectral_tail_fraction(smooth) <= 1e-14);
    const Field rough = plane_wave(g, g.xi_max() * 0.75);
    CHECK(spectral_tail_fraction(rough) >= 0.99);
}
