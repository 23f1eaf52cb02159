#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace gdnls {

/// Uniform periodic spatial grid together with its dual frequency lattice.
///
/// Sample points are x_j = x_min + j*dx for j = 0..M-1 (x_max is the periodic
/// image of x_0 and is not a sample).  Frequencies are xi_m = 2*pi*m/L for
/// integer modes m in [-M/2, M/2), stored in FFT order: storage slot k holds
/// mode k for k < M/2 and mode k - M otherwise.
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t m = 4;  ///< point count, a power of two

    double length() const { return x_max - x_min; }
    double dx() const { return length() / static_cast<double>(m); }

    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }

    /// Integer mode of storage slot k, in [-M/2, M/2).
    int mode(std::size_t k) const {
        return k < m / 2 ? static_cast<int>(k)
                         : static_cast<int>(k) - static_cast<int>(m);
    }

    /// Frequency of storage slot k.
    double xi(std::size_t k) const {
        return 2.0 * std::numbers::pi * static_cast<double>(mode(k)) / length();
    }

    /// Frequency of integer mode n (n need not lie on the lattice range).
    double xi_of_mode(int n) const {
        return 2.0 * std::numbers::pi * static_cast<double>(n) / length();
    }

    /// Lattice spacing of the frequency lattice, 2*pi/L.
    double dxi() const { return 2.0 * std::numbers::pi / length(); }

    /// Largest frequency magnitude on the lattice, pi/dx (the Nyquist mode -M/2).
    double xi_max() const { return std::numbers::pi / dx(); }

    /// Storage slot of integer mode n in [-M/2, M/2).
    std::size_t slot(int n) const {
        return n >= 0 ? static_cast<std::size_t>(n)
                      : static_cast<std::size_t>(n + static_cast<int>(m));
    }

    bool operator==(const Grid&) const = default;
};

/// Builds a grid on (x_min, x_max) with M sample points.
/// Throws std::invalid_argument for a degenerate interval or non-power-of-two M < 4.
Grid make_grid(double x_min, double x_max, std::size_t m);

/// True when n is a power of two (n >= 1).
bool is_dyadic(double n);

}  // namespace gdnls
