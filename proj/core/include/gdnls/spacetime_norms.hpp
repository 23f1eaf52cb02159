#pragma once

#include "gdnls/dynamics.hpp"

namespace gdnls {

/// Space-time norms of one trajectory over its interval:
///   x_norm = sup_t ||w||_{H^1} + ( int ||<dx> w||_{L^inf}^4 dt )^{1/4}
///   y_norm = ( int ||<dx> w||_{L^6}^6 dt )^{1/6}
/// sup in time is a max over snapshots, time integrals are composite trapezoid.
struct NormReport {
    double x_norm = 0.0;
    double y_norm = 0.0;
    double sup_h1 = 0.0;
    double l4_linf = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
};

NormReport norm_report(const Trajectory& traj);

NormReport xnorm(const Trajectory& traj);
double ynorm(const Trajectory& traj);

/// Norms of the snapshot-wise difference.  Requires identical grids and times.
NormReport traj_distance(const Trajectory& a, const Trajectory& b);

/// Restriction to the snapshots with t_start <= t <= t_end.
Trajectory restrict_trajectory(const Trajectory& traj, double t_start, double t_end);

}  // namespace gdnls
