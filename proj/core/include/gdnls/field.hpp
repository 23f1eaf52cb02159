#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gdnls/grid.hpp"

namespace gdnls {

using Complex = std::complex<double>;

/// Complex-valued function sampled on a Grid at one instant.
struct Field {
    Grid grid;
    std::vector<Complex> values;  ///< length grid.m
    double time = 0.0;

    Complex& operator[](std::size_t j) { return values[j]; }
    const Complex& operator[](std::size_t j) const { return values[j]; }
    std::size_t size() const { return values.size(); }
};

Field zero_field(const Grid& grid, double time = 0.0);
Field make_field(const Grid& grid, const std::function<Complex(double)>& f, double time = 0.0);

/// Throws std::invalid_argument unless values length matches grid.m.
void validate(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(Complex s, const Field& a);
Field operator*(double s, const Field& a);

/// Largest |f| over the grid.
double max_abs(const Field& f);

/// True when |f| is below tol * max|f| within `margin` points of both box edges.
/// This is the decay contract required of data fed to the gauge transform.
bool satisfies_edge_decay(const Field& f, std::size_t margin = 16, double tol = 1e-12);

}  // namespace gdnls
