#include "gdnls/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gdnls/spectral.hpp"

namespace gdnls {

int default_m_star(int k) {
    return static_cast<int>(std::ceil(std::log2(16.0 * static_cast<double>(k))));
}

void NormalFormConfig::validate() const {
    if (k < 3) throw std::invalid_argument("NormalFormConfig: k must be >= 3");
    if (!is_dyadic(n0)) throw std::invalid_argument("NormalFormConfig: N0 must be dyadic");
    if (std::pow(2.0, m_star) < 16.0 * k) {
        throw std::invalid_argument("NormalFormConfig: 2^m_star must be >= 16k");
    }
}

std::vector<int> iota(int k) {
    if (k < 3) throw std::invalid_argument("iota: k must be >= 3");
    std::vector<int> signs(2 * k + 1, +1);
    for (int n = 1; n <= k - 1; ++n) {
        signs[2 * n - 2] = +1;  // slot 2n-1
        signs[2 * n - 1] = -1;  // slot 2n
    }
    signs[2 * k - 2] = +1;
    signs[2 * k - 1] = +1;
    signs[2 * k] = -1;
    return signs;
}

double phase(std::span<const double> eta, int k) {
    const std::size_t slots = 2 * static_cast<std::size_t>(k) + 1;
    if (eta.size() != slots) throw std::invalid_argument("phase: eta must have 2k+1 entries");
    const auto signs = iota(k);
    double total = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < slots; ++j) {
        total += eta[j];
        weighted += signs[j] * eta[j] * eta[j];
    }
    return total * total - weighted;
}

double multiplier_mn(std::span<const double> eta, double n, const NormalFormConfig& cfg) {
    cfg.validate();
    if (!is_dyadic(n)) throw std::invalid_argument("multiplier_mn: N must be dyadic");
    const std::size_t slots = 2 * static_cast<std::size_t>(cfg.k) + 1;
    if (eta.size() != slots) throw std::invalid_argument("multiplier_mn: eta must have 2k+1 entries");

    const double sep = n / std::pow(2.0, cfg.m_star);
    double cutoffs = 1.0;
    for (std::size_t j = 0; j + 1 < slots; ++j) {
        cutoffs *= bump_leq(std::abs(eta[j]), sep);
        if (cutoffs == 0.0) return 0.0;
    }
    cutoffs *= bump_block(std::abs(eta.back()), n);
    if (cutoffs == 0.0) return 0.0;

    const double ph = phase(eta, cfg.k);
    if (std::abs(ph) < n * n / 8.0) {
        // cannot happen on the multiplier support; a hit means the separation
        // parameter no longer controls the phase
        throw std::logic_error("multiplier_mn: |Phi| < N^2/8 on the support");
    }
    return eta.back() / ph * cutoffs;
}

namespace detail {

namespace {

struct SupportEntry {
    int mode;
    double xi;
    double weight;       // cutoff value
    Complex value;       // signed-slot spectrum at this mode
};

// Spectrum of f^{(iota)} indexed by storage slot: the transform of the
// conjugate is conj(fhat(-eta)), with the Nyquist mode its own reflection.
std::vector<Complex> signed_spectrum(const Spectrum& hat, const Grid& grid, int sign) {
    const std::size_t m = grid.m;
    std::vector<Complex> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (sign == +1) {
            out[k] = hat[k];
        } else {
            int reflected = -grid.mode(k);
            if (reflected == static_cast<int>(m) / 2) reflected = -static_cast<int>(m) / 2;
            out[k] = std::conj(hat[grid.slot(reflected)]);
        }
    }
    return out;
}

}  // namespace

Field omega_impl(std::span<const Field> fields, const NormalFormConfig& cfg, double n_start) {
    cfg.validate();
    const std::size_t slots = 2 * static_cast<std::size_t>(cfg.k) + 1;
    if (fields.size() != slots) throw std::invalid_argument("omega: needs 2k+1 fields");
    const Grid grid = fields[0].grid;
    if (grid.m > cfg.grid_cap) {
        throw std::invalid_argument("omega: M exceeds grid_cap (direct transform cost guard)");
    }
    for (const auto& f : fields) {
        validate(f);
        if (!(f.grid == grid)) throw std::invalid_argument("omega: mixed grids");
    }

    const auto signs = iota(cfg.k);
    std::vector<std::vector<Complex>> ghat(slots);
    for (std::size_t j = 0; j < slots; ++j) {
        ghat[j] = signed_spectrum(forward_transform(fields[j]), grid, signs[j]);
    }

    const int half = static_cast<int>(grid.m) / 2;
    const double sep_scale = std::pow(2.0, cfg.m_star);
    Spectrum acc(grid.m, Complex{0.0, 0.0});

    for (double n = n_start; n <= grid.xi_max() / 2.0; n *= 2.0) {
        // per-slot support lists: a term contributes only where no cutoff vanishes
        std::vector<std::vector<SupportEntry>> low(slots - 1);
        for (std::size_t j = 0; j + 1 < slots; ++j) {
            for (int mode = -half; mode < half; ++mode) {
                const double xi = grid.xi_of_mode(mode);
                const double wgt = bump_leq(std::abs(xi), n / sep_scale);
                const Complex val = ghat[j][grid.slot(mode)];
                if (wgt != 0.0 && val != Complex{0.0, 0.0}) {
                    low[j].push_back({mode, xi, wgt, val});
                }
            }
        }
        std::vector<SupportEntry> high;
        for (int mode = -half; mode < half; ++mode) {
            const double xi = grid.xi_of_mode(mode);
            const double wgt = bump_block(std::abs(xi), n);
            const Complex val = ghat[slots - 1][grid.slot(mode)];
            if (wgt != 0.0 && val != Complex{0.0, 0.0}) {
                high.push_back({mode, xi, wgt, val});
            }
        }
        bool empty = high.empty();
        for (const auto& l : low) empty = empty || l.empty();
        if (empty) continue;

        const double n2_8 = n * n / 8.0;
        // depth-first odometer over the 2k low slots
        struct Frame {
            std::size_t index;
            int mode_sum;
            double iota_eta2;
            Complex product;
        };
        std::vector<Frame> stack;
        stack.push_back({0, 0, 0.0, Complex{1.0, 0.0}});
        std::vector<std::size_t> cursor(slots - 1, 0);
        std::size_t depth = 0;
        // iterative nested loop: cursor[d] walks low[d]
        while (true) {
            if (depth == slots - 1) {
                const Frame& top = stack.back();
                for (const auto& h : high) {
                    const int out_mode = top.mode_sum + h.mode;
                    if (out_mode < -half || out_mode >= half) continue;
                    const double xi_out = grid.xi_of_mode(out_mode);
                    const double ph = xi_out * xi_out - top.iota_eta2 + h.xi * h.xi;
                    if (std::abs(ph) < n2_8) {
                        throw std::logic_error("omega: |Phi| < N^2/8 on the support");
                    }
                    acc[grid.slot(out_mode)] +=
                        (h.xi / ph) * h.weight * top.product * h.value;
                }
                // backtrack
                if (depth == 0) break;
                --depth;
                stack.pop_back();
                ++cursor[depth];
                continue;
            }
            if (cursor[depth] >= low[depth].size()) {
                if (depth == 0) break;
                cursor[depth] = 0;
                --depth;
                stack.pop_back();
                ++cursor[depth];
                continue;
            }
            const auto& e = low[depth][cursor[depth]];
            const Frame& top = stack.back();
            stack.push_back({depth + 1, top.mode_sum + e.mode,
                             top.iota_eta2 + signs[depth] * e.xi * e.xi,
                             top.product * e.weight * e.value});
            ++depth;
        }
    }

    const double scale = std::pow(1.0 / grid.length(), 2.0 * cfg.k);
    for (auto& v : acc) v *= scale;
    return inverse_transform(grid, acc, fields[0].time);
}

std::vector<double> quadrature_weights(std::size_t len, double h) {
    std::vector<double> w(len + 1, 0.0);
    if (len == 0) return w;
    if (len == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    std::size_t simpson_len = len;
    if (len % 2 == 1) {
        if (len < 3) throw std::invalid_argument("quadrature_weights: bad interval count");
        simpson_len = len - 3;
    }
    for (std::size_t i = 0; i + 2 <= simpson_len; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_len != len) {
        const std::size_t s = simpson_len;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

}  // namespace detail

Field omega(std::span<const Field> fields, const NormalFormConfig& cfg) {
    return detail::omega_impl(fields, cfg, cfg.n0);
}

Field omega_diag(const Field& f, const NormalFormConfig& cfg) {
    std::vector<Field> fields(2 * static_cast<std::size_t>(cfg.k) + 1, f);
    return omega(fields, cfg);
}

Field omega_slot_unsigned(const Field& f, const Field& g, int l, const NormalFormConfig& cfg) {
    const int slots = 2 * cfg.k + 1;
    if (l < 1 || l > slots) throw std::invalid_argument("omega_slot: slot index out of range");
    std::vector<Field> fields(static_cast<std::size_t>(slots), f);
    fields[static_cast<std::size_t>(l - 1)] = g;
    return omega(fields, cfg);
}

Field omega_slot(const Field& f, const Field& g, int l, const NormalFormConfig& cfg) {
    Field out = omega_slot_unsigned(f, g, l, cfg);
    if (l % 2 == 1) out = -1.0 * out;
    return out;
}

namespace {

// |w|^{2k-2} w^2 evaluated pointwise.
Field power_factor(const Field& w, int k) {
    Field out = zero_field(w.grid, w.time);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex z = w.values[j];
        out.values[j] = std::pow(std::abs(z), 2.0 * k - 2.0) * z * z;
    }
    return out;
}

Field pointwise_product(const Field& a, const Field& b) {
    Field out = a;
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] *= b.values[j];
    return out;
}

Field conj_field(const Field& a) {
    Field out = a;
    for (auto& v : out.values) v = std::conj(v);
    return out;
}

}  // namespace

Field resonance(const Field& w, const NormalFormConfig& cfg) {
    cfg.validate();
    validate(w);
    const Field full = power_factor(w, cfg.k);
    Field out = zero_field(w.grid, w.time);
    for (double n = 1.0; n <= w.grid.xi_max() / 2.0; n *= 2.0) {
        const Field low = power_factor(lp_project(w, n, LpKind::ll, cfg.m_star), cfg.k);
        const Field dwn = conj_field(spatial_derivative(lp_project(w, n, LpKind::at), 1));
        for (std::size_t j = 0; j < w.size(); ++j) {
            Complex coeff = full.values[j] - low.values[j];
            if (n <= cfg.n0) coeff += low.values[j];
            out.values[j] += coeff * dwn.values[j];
        }
    }
    return out;
}

double f3_decomposition_check(const Field& w, const NormalFormConfig& cfg, bool* warned) {
    cfg.validate();
    validate(w);
    const double tail = spectral_tail_fraction(w);
    if (warned != nullptr) *warned = tail > 1e-12;

    Field assembled = resonance(w, cfg);
    for (double n = 1.0; n <= w.grid.xi_max() / 2.0; n *= 2.0) {
        if (!(n > cfg.n0)) continue;
        const Field low = power_factor(lp_project(w, n, LpKind::ll, cfg.m_star), cfg.k);
        const Field dwn = conj_field(spatial_derivative(lp_project(w, n, LpKind::at), 1));
        assembled = assembled + pointwise_product(low, dwn);
    }

    const Field direct = pointwise_product(power_factor(w, cfg.k),
                                           conj_field(spatial_derivative(w, 1)));
    return lebesgue_norm(assembled - direct, 2.0);
}

namespace {

struct QuadratureRange {
    std::size_t i0;
    std::size_t i1;
    std::vector<double> weights;
};

QuadratureRange simpson_range(const Trajectory& traj, double t0, double t, bool strict_odd) {
    QuadratureRange range;
    range.i0 = traj.index_of_time(t0);
    range.i1 = traj.index_of_time(t);
    if (range.i1 < range.i0) throw std::invalid_argument("residual: t precedes t0 in storage order");
    const std::size_t len = range.i1 - range.i0;
    if (len > 0) {
        if (strict_odd && len % 2 != 0) {
            throw std::invalid_argument("residual: composite Simpson needs an odd snapshot count");
        }
        const double h = (traj.times[range.i1] - traj.times[range.i0]) / static_cast<double>(len);
        range.weights = detail::quadrature_weights(len, h);
    }
    return range;
}

Field gauged_f123(const Field& w, double sigma) {
    return f1(w, sigma) + f2(w, sigma) + f3(w, sigma);
}

// F with i dw/dt + w_xx = F; equals i * (nonlinear part of dw/dt).
Field duhamel_forcing(const Field& w, RhsKind kind, double sigma) {
    return Complex{0.0, 1.0} * nonlinearity(w, kind, sigma);
}

}  // namespace

double duhamel_residual(const Trajectory& traj, double t0, double t) {
    if (traj.snapshots.empty()) throw std::invalid_argument("duhamel_residual: empty trajectory");
    const auto range = simpson_range(traj, t0, t, /*strict_odd=*/true);
    if (range.i0 == range.i1) return 0.0;

    const Field& w0 = traj.snapshots[range.i0];
    const Field& wt = traj.snapshots[range.i1];
    Field rhs = free_propagate(w0, t - t0);
    for (std::size_t i = range.i0; i <= range.i1; ++i) {
        const double weight = range.weights[i - range.i0];
        if (weight == 0.0) continue;
        const Field forcing =
            duhamel_forcing(traj.snapshots[i], traj.config.kind, traj.config.sigma);
        rhs = rhs + (Complex{0.0, -1.0} * weight) * free_propagate(forcing, t - traj.times[i]);
    }
    return lebesgue_norm(wt - rhs, 2.0);
}

double normalform_residual(const Trajectory& traj, double t0, double t,
                           const NormalFormConfig& cfg, const NormalFormConventions& conv) {
    cfg.validate();
    if (traj.snapshots.empty()) throw std::invalid_argument("normalform_residual: empty trajectory");
    if (traj.grid.m > cfg.grid_cap) {
        throw std::invalid_argument("normalform_residual: M exceeds grid_cap (direct transform cost guard)");
    }
    const auto range = simpson_range(traj, t0, t, /*strict_odd=*/true);
    if (range.i0 == range.i1) return 0.0;

    const Field& w0 = traj.snapshots[range.i0];
    const Field& wt = traj.snapshots[range.i1];

    if (traj.config.kind == RhsKind::linear) {
        return lebesgue_norm(wt - free_propagate(w0, t - t0), 2.0);
    }
    if (traj.config.kind != RhsKind::gauged) {
        throw std::invalid_argument("normalform_residual: trajectory must solve the gauged equation");
    }
    if (std::abs(traj.config.sigma - static_cast<double>(cfg.k)) > 1e-12) {
        throw std::invalid_argument("normalform_residual: trajectory sigma must equal cfg.k");
    }

    const double k = static_cast<double>(cfg.k);
    const double n_start =
        conv.split == SplitConvention::verbatim ? cfg.n0 : 2.0 * cfg.n0;
    const auto signs = iota(cfg.k);
    const std::size_t slots = 2 * static_cast<std::size_t>(cfg.k) + 1;

    auto omega_all = [&](const Field& f) {
        std::vector<Field> fields(slots, f);
        return detail::omega_impl(fields, cfg, n_start);
    };

    Field rhs = free_propagate(w0, t - t0);
    rhs = rhs + (-k) * free_propagate(omega_all(w0), t - t0);
    rhs = rhs + k * omega_all(wt);

    for (std::size_t i = range.i0; i <= range.i1; ++i) {
        const double weight = range.weights[i - range.i0];
        if (weight == 0.0) continue;
        const Field& ws = traj.snapshots[i];
        const double lag = t - traj.times[i];

        const Field f12 = f1(ws, k) + f2(ws, k);
        rhs = rhs + (Complex{0.0, -1.0} * weight) * free_propagate(f12, lag);

        rhs = rhs + (k * weight) * free_propagate(resonance(ws, cfg), lag);

        const Field forcing = gauged_f123(ws, k);
        std::vector<Field> fields(slots, ws);
        for (std::size_t l = 1; l <= slots; ++l) {
            const double slot_sign = conv.slot_sign == SlotSignConvention::verbatim
                                         ? (l % 2 == 0 ? 1.0 : -1.0)
                                         : -static_cast<double>(signs[l - 1]);
            fields[l - 1] = forcing;
            const Field term = detail::omega_impl(fields, cfg, n_start);
            fields[l - 1] = ws;
            rhs = rhs + (Complex{0.0, -k} * slot_sign * weight) * free_propagate(term, lag);
        }
    }

    return lebesgue_norm(wt - rhs, 2.0);
}

}  // namespace gdnls
