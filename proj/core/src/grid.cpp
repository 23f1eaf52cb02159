#include "gdnls/grid.hpp"

#include <stdexcept>

namespace gdnls {

bool is_dyadic(double n) {
    if (n < 1.0) return false;
    double r = n;
    while (r > 1.0) r /= 2.0;
    return r == 1.0;
}

Grid make_grid(double x_min, double x_max, std::size_t m) {
    if (!(x_max > x_min)) {
        throw std::invalid_argument("make_grid: x_max must exceed x_min");
    }
    if (m < 4 || (m & (m - 1)) != 0) {
        throw std::invalid_argument("make_grid: M must be a power of two >= 4");
    }
    return Grid{x_min, x_max, m};
}

}  // namespace gdnls
