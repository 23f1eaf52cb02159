#include "gdnls/spacetime_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gdnls {

namespace {

void require_nonempty(const Trajectory& traj) {
    if (traj.snapshots.empty()) throw std::invalid_argument("space-time norm of empty trajectory");
}

// Composite trapezoid of per-snapshot samples g(t_i) >= 0.
double time_trapezoid(const std::vector<double>& times, const std::vector<double>& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        acc += 0.5 * std::abs(times[i + 1] - times[i]) * (g[i] + g[i + 1]);
    }
    return acc;
}

}  // namespace

NormReport norm_report(const Trajectory& traj) {
    require_nonempty(traj);
    const std::size_t n = traj.size();
    std::vector<double> linf4(n), l66(n);
    NormReport report;
    report.t_start = std::min(traj.times.front(), traj.times.back());
    report.t_end = std::max(traj.times.front(), traj.times.back());
    for (std::size_t i = 0; i < n; ++i) {
        const Field& w = traj.snapshots[i];
        report.sup_h1 = std::max(report.sup_h1, sobolev_norm(w, 1.0));
        const Field bw = bracket_derivative(w);
        const double linf = lebesgue_norm(bw, std::numeric_limits<double>::infinity());
        const double l6 = lebesgue_norm(bw, 6.0);
        linf4[i] = linf * linf * linf * linf;
        l66[i] = std::pow(l6, 6.0);
    }
    report.l4_linf = std::pow(time_trapezoid(traj.times, linf4), 0.25);
    report.y_norm = std::pow(time_trapezoid(traj.times, l66), 1.0 / 6.0);
    report.x_norm = report.sup_h1 + report.l4_linf;
    return report;
}

NormReport xnorm(const Trajectory& traj) { return norm_report(traj); }

double ynorm(const Trajectory& traj) { return norm_report(traj).y_norm; }

NormReport traj_distance(const Trajectory& a, const Trajectory& b) {
    require_nonempty(a);
    require_nonempty(b);
    if (!(a.grid == b.grid) || a.times.size() != b.times.size()) {
        throw std::invalid_argument("traj_distance: mismatched lattices");
    }
    const double span = std::max(1.0, std::abs(a.times.back() - a.times.front()));
    Trajectory diff;
    diff.grid = a.grid;
    diff.config = a.config;
    diff.times = a.times;
    diff.snapshots.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.times[i] - b.times[i]) > 1e-9 * span) {
            throw std::invalid_argument("traj_distance: mismatched time lattices");
        }
        diff.snapshots.push_back(a.snapshots[i] - b.snapshots[i]);
    }
    return norm_report(diff);
}

Trajectory restrict_trajectory(const Trajectory& traj, double t_start, double t_end) {
    Trajectory out;
    out.grid = traj.grid;
    out.config = traj.config;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        if (t >= t_start - 1e-12 && t <= t_end + 1e-12) {
            out.times.push_back(t);
            out.snapshots.push_back(traj.snapshots[i]);
        }
    }
    return out;
}

}  // namespace gdnls
