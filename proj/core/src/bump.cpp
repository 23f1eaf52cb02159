#include "gdnls/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace gdnls {

double bump(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    // psi(s) = exp(-1/s); the quotient is smooth across both endpoints.
    const double a = std::exp(-1.0 / (2.0 - r));
    const double b = std::exp(-1.0 / (r - 1.0));
    return a / (a + b);
}

double bump_leq(double r, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("bump_leq: N must be positive");
    return bump(r / n);
}

double bump_block(double r, double n) {
    if (n == 1.0) return bump_leq(r, 1.0);
    return bump_leq(r, n) - bump_leq(r, n / 2.0);
}

std::vector<double> dyadic_blocks(double xi_top) {
    std::vector<double> blocks{1.0};
    while (blocks.back() < xi_top) blocks.push_back(2.0 * blocks.back());
    return blocks;
}

}  // namespace gdnls
