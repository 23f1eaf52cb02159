#include "gdnls/spectral.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "fft.hpp"

namespace gdnls {

namespace {

// Applies a frequency-diagonal multiplier; the dx/L normalization factors of
// the analysis transforms cancel, leaving a single 1/M.
Field apply_multiplier(const Field& f, const std::function<Complex(double, int)>& mult) {
    validate(f);
    const std::size_t m = f.grid.m;
    std::vector<Complex> hat(m), out(m);
    detail::fft_forward(m, f.values.data(), hat.data());
    for (std::size_t k = 0; k < m; ++k) {
        hat[k] *= mult(f.grid.xi(k), f.grid.mode(k));
    }
    detail::fft_backward(m, hat.data(), out.data());
    const double inv_m = 1.0 / static_cast<double>(m);
    for (auto& v : out) v *= inv_m;
    return Field{f.grid, std::move(out), f.time};
}

}  // namespace

Spectrum forward_transform(const Field& f) {
    validate(f);
    const std::size_t m = f.grid.m;
    Spectrum hat(m);
    detail::fft_forward(m, f.values.data(), hat.data());
    const double dx = f.grid.dx();
    for (std::size_t k = 0; k < m; ++k) {
        // shift from index space to x_j = x_min + j dx
        const double phase = -f.grid.xi(k) * f.grid.x_min;
        hat[k] *= dx * Complex{std::cos(phase), std::sin(phase)};
    }
    return hat;
}

Field inverse_transform(const Grid& grid, const Spectrum& spectrum, double time) {
    if (spectrum.size() != grid.m) {
        throw std::invalid_argument("inverse_transform: spectrum length must equal M");
    }
    const std::size_t m = grid.m;
    Spectrum shifted(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double phase = grid.xi(k) * grid.x_min;
        shifted[k] = spectrum[k] * Complex{std::cos(phase), std::sin(phase)};
    }
    std::vector<Complex> out(m);
    detail::fft_backward(m, shifted.data(), out.data());
    const double inv_l = 1.0 / grid.length();
    for (auto& v : out) v *= inv_l;
    return Field{grid, std::move(out), time};
}

namespace {

double spectral_norm(const Field& f, const std::function<double(double)>& weight) {
    validate(f);
    const std::size_t m = f.grid.m;
    std::vector<Complex> hat(m);
    detail::fft_forward(m, f.values.data(), hat.data());
    // |fhat|^2 = dx^2 |hat|^2; the x_min phase is unimodular and drops out.
    const double dx = f.grid.dx();
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        sum += weight(f.grid.xi(k)) * std::norm(hat[k]);
    }
    return std::sqrt(sum * dx * dx / f.grid.length());
}

}  // namespace

double sobolev_norm(const Field& f, double s) {
    return spectral_norm(f, [s](double xi) { return std::pow(1.0 + xi * xi, s); });
}

double homogeneous_sobolev_norm(const Field& f, double s) {
    return spectral_norm(f, [s](double xi) {
        return xi == 0.0 ? 0.0 : std::pow(std::abs(xi), 2.0 * s);
    });
}

double lebesgue_norm(const Field& f, double p) {
    validate(f);
    if (std::isinf(p)) return max_abs(f);
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
    double sum = 0.0;
    for (const auto& v : f.values) sum += std::pow(std::abs(v), p);
    return std::pow(f.grid.dx() * sum, 1.0 / p);
}

Field lp_project(const Field& f, double n, LpKind kind, int m_star) {
    if (!is_dyadic(n)) throw std::invalid_argument("lp_project: N must be dyadic (1, 2, 4, ...)");
    const double scale = std::pow(2.0, m_star);
    return apply_multiplier(f, [&](double xi, int) -> Complex {
        const double r = std::abs(xi);
        switch (kind) {
            case LpKind::at:
                return bump_block(r, n);
            case LpKind::leq:
                return bump_leq(r, n);
            case LpKind::ll:
                return bump_leq(r, n / scale);
            case LpKind::geq:
                return 1.0 - bump_leq(r, n / 2.0);
            case LpKind::sim:
                return bump_leq(r, 4.0 * n) - bump_leq(r, n / 8.0);
        }
        return 0.0;
    });
}

std::vector<double> grid_dyadic_blocks(const Grid& grid) {
    return dyadic_blocks(grid.xi_max());
}

Field bracket_derivative(const Field& f) {
    return apply_multiplier(f, [](double xi, int) -> Complex {
        return std::sqrt(1.0 + xi * xi);
    });
}

Field spatial_derivative(const Field& f, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("spatial_derivative: order must be 1 or 2");
    }
    const int nyquist = -static_cast<int>(f.grid.m) / 2;
    return apply_multiplier(f, [&](double xi, int mode) -> Complex {
        if (order == 1) {
            if (mode == nyquist) return 0.0;  // unmatched mode has no odd derivative
            return Complex{0.0, xi};
        }
        return -xi * xi;
    });
}

Field free_propagate(const Field& f, double t) {
    Field out = apply_multiplier(f, [t](double xi, int) -> Complex {
        const double phase = -t * xi * xi;
        return Complex{std::cos(phase), std::sin(phase)};
    });
    out.time = f.time + t;
    return out;
}

Field cumulative_integral(const Field& f) {
    validate(f);
    const double dx = f.grid.dx();
    Field out = zero_field(f.grid, f.time);
    double acc = 0.0;
    out.values[0] = 0.0;
    for (std::size_t j = 1; j < f.grid.m; ++j) {
        acc += 0.5 * dx * (f.values[j - 1].real() + f.values[j].real());
        out.values[j] = acc;
    }
    return out;
}

double spectral_tail_fraction(const Field& f) {
    validate(f);
    const std::size_t m = f.grid.m;
    std::vector<Complex> hat(m);
    detail::fft_forward(m, f.values.data(), hat.data());
    const double cut = 0.5 * f.grid.xi_max();
    double tail = 0.0, total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double e = std::norm(hat[k]);
        total += e;
        if (std::abs(f.grid.xi(k)) >= cut) tail += e;
    }
    return total == 0.0 ? 0.0 : std::sqrt(tail / total);
}

}  // namespace gdnls
