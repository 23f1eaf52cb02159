#pragma once

#include <array>
#include <span>
#include <vector>

#include "gdnls/dynamics.hpp"
#include "gdnls/field.hpp"

namespace gdnls {

/// Parameters of the normal-form transform.
struct NormalFormConfig {
    int k = 3;                 ///< nonlinearity power, >= 3
    double n0 = 2.0;           ///< dyadic cutoff N0 >= 1
    int m_star = 6;            ///< "<< N" means P_{<= N/2^{m_star}}; 2^{m_star} >= 16k
    std::size_t grid_cap = 32; ///< largest M admitted by the direct transform

    void validate() const;  ///< throws std::invalid_argument on violation
};

/// Default separation exponent, ceil(log2(16k)).
int default_m_star(int k);

/// Sign pattern iota of the 2k+1 slots: alternating +1, -1 through slot 2k-2,
/// then +1, +1, -1.  A -1 slot carries a conjugated factor.
std::vector<int> iota(int k);

/// Phase Phi(eta) = (sum_j eta_j)^2 - sum_j iota_j eta_j^2 for eta of length 2k+1.
double phase(std::span<const double> eta, int k);

/// Multiplier m_N(eta) = eta_{2k+1}/Phi * prod_{j<=2k} phi_{<<N}(|eta_j|) * phi_N(|eta_{2k+1}|).
/// Returns 0 whenever a cutoff factor vanishes; on the support |Phi| >= N^2/8
/// holds by the m_star choice (violations throw, they would mean a division risk).
double multiplier_mn(std::span<const double> eta, double n, const NormalFormConfig& cfg);

/// (2k+1)-linear normal-form transform: spectrum-side nested convolution
///   Omega_hat(xi) = sum_{N dyadic, N0 <= N <= Nyquist/2} (1/L)^{2k}
///       sum_{eta_1..eta_2k on the lattice} m_N(eta) prod_j ghat_j(eta_j),
/// with eta_{2k+1} = xi - sum eta_j, ghat_j = fhat_j for iota_j = +1 and
/// ghat_j(eta) = conj(fhat_j(-eta)) for iota_j = -1.  Direct summation over the
/// cutoff supports; no fast path.  Rejects M > grid_cap and mixed grids.
Field omega(std::span<const Field> fields, const NormalFormConfig& cfg);

/// omega with every slot equal to f.
Field omega_diag(const Field& f, const NormalFormConfig& cfg);

/// omega with slot l carrying (-1)^l g (conjugation still per iota_l); 1-based l.
Field omega_slot(const Field& f, const Field& g, int l, const NormalFormConfig& cfg);

/// omega with slot l carrying g and no extra sign.
Field omega_slot_unsigned(const Field& f, const Field& g, int l, const NormalFormConfig& cfg);

/// Resonance part of F3/(ik):
///   R(w) = sum_N (|w|^{2k-2} w^2 - |w_{<<N}|^{2k-2} w_{<<N}^2) d/dx conj(w_N)
///        + sum_{N <= N0} |w_{<<N}|^{2k-2} w_{<<N}^2 d/dx conj(w_N),
/// dyadic N running from 1 (P_1 = P_{<=1}) to Nyquist/2.
Field resonance(const Field& w, const NormalFormConfig& cfg);

/// L^2 residual of the exact decomposition
///   R(w) + sum_{N > N0} |w_{<<N}|^{2k-2} w_{<<N}^2 d/dx conj(w_N) = F3(w)/(ik).
/// Expected <= 1e-10 for w band-limited below Nyquist/2; `warned`, when given,
/// reports that the band-limitation precondition was violated.
double f3_decomposition_check(const Field& w, const NormalFormConfig& cfg, bool* warned = nullptr);

/// L^2 residual of the Duhamel form: ||w(t) - e^{i(t-t0)dxx} w(t0)
///   + i int_{t0}^t e^{i(t-s)dxx} (F1+F2+F3)(w(s)) ds|| with composite-Simpson
/// quadrature on the stored snapshots (odd snapshot count >= 3 required).
double duhamel_residual(const Trajectory& traj, double t0, double t);

/// Dyadic bookkeeping of the transformed integral equation.  `verbatim` keeps
/// the displayed ranges (Omega sums N >= N0 while the resonance low sum is
/// N <= N0, double-counting the N0 block); `consistent_split` pairs the
/// verbatim resonance term with Omega sums over N > N0 so the two ranges
/// partition F3 exactly.
enum class SplitConvention { consistent_split, verbatim };

/// Slot signs of the Omega_l sum in the transformed equation.  `verbatim` uses
/// the (-1)^l convention of omega_slot; `derived` uses -iota_l, which the exact
/// time-differentiation bookkeeping produces (the two agree for l <= 2k-1 and
/// differ in slots 2k and 2k+1).
enum class SlotSignConvention { derived, verbatim };

struct NormalFormConventions {
    SplitConvention split = SplitConvention::consistent_split;
    SlotSignConvention slot_sign = SlotSignConvention::derived;
};

/// L^2 residual of the normal-form integral equation: ||w(t) - RHS(t)|| with
///   RHS = e^{i(t-t0)dxx} w0 - i int e^{i(t-s)dxx}(F1+F2) ds
///       - k e^{i(t-t0)dxx} Omega(w0) + k Omega(w(t)) + k int e^{i(t-s)dxx} R ds
///       - i k sum_l int e^{i(t-s)dxx} Omega_l(w, (F1+F2+F3)(w)) ds.
/// This is the arbiter for every sign and constant in the transform.
double normalform_residual(const Trajectory& traj, double t0, double t,
                           const NormalFormConfig& cfg,
                           const NormalFormConventions& conv = {});

namespace detail {

/// Direct transform with an explicit lowest dyadic block (used by the
/// consistent split) and per-slot inputs; slots must already carry any signs.
Field omega_impl(std::span<const Field> fields, const NormalFormConfig& cfg, double n_start);

/// Composite Simpson weights for len uniform intervals (len + 1 nodes); falls
/// back to Simpson 3/8 on the last three intervals when len is odd, and to the
/// trapezoid rule for a single interval.
std::vector<double> quadrature_weights(std::size_t len, double h);

}  // namespace detail

}  // namespace gdnls
