#include "gdnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdnls {

Field zero_field(const Grid& grid, double time) {
    return Field{grid, std::vector<Complex>(grid.m, Complex{0.0, 0.0}), time};
}

Field make_field(const Grid& grid, const std::function<Complex(double)>& f, double time) {
    Field out = zero_field(grid, time);
    for (std::size_t j = 0; j < grid.m; ++j) out.values[j] = f(grid.x(j));
    return out;
}

void validate(const Field& f) {
    if (f.values.size() != f.grid.m) {
        throw std::invalid_argument("Field: values length does not match grid point count");
    }
}

namespace {
void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("Field: mixed grids");
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] += b.values[j];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] -= b.values[j];
    return out;
}

Field operator*(Complex s, const Field& a) {
    Field out = a;
    for (auto& v : out.values) v *= s;
    return out;
}

Field operator*(double s, const Field& a) { return Complex{s, 0.0} * a; }

double max_abs(const Field& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

bool satisfies_edge_decay(const Field& f, std::size_t margin, double tol) {
    validate(f);
    const double peak = max_abs(f);
    if (peak == 0.0) return true;
    const std::size_t m = f.grid.m;
    const std::size_t span = std::min(margin, m / 2);
    double edge = 0.0;
    for (std::size_t j = 0; j < span; ++j) {
        edge = std::max(edge, std::abs(f.values[j]));
        edge = std::max(edge, std::abs(f.values[m - 1 - j]));
    }
    return edge <= tol * peak;
}

}  // namespace gdnls
