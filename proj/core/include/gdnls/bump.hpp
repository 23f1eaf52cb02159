#pragma once

#include <vector>

namespace gdnls {

/// Smooth cutoff phi: 1 on [0,1], 0 on [2,inf), strictly decreasing in between.
/// Concretely phi(r) = psi(2-r) / (psi(2-r) + psi(r-1)) with psi(s) = exp(-1/s).
double bump(double r);

/// phi_{<=N}(r) = phi(r/N).  N may be any positive number.
double bump_leq(double r, double n);

/// Dyadic block phi_N = phi_{<=N} - phi_{<=N/2} for N >= 2.
/// The lowest block N = 1 is the inhomogeneous piece phi_{<=1}.
double bump_block(double r, double n);

/// Dyadic numbers {1, 2, 4, ...} up to the first power of two >= xi_top.
std::vector<double> dyadic_blocks(double xi_top);

}  // namespace gdnls
