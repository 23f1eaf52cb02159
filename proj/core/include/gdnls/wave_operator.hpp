#pragma once

#include <utility>
#include <vector>

#include "gdnls/gauge.hpp"
#include "gdnls/normal_form.hpp"
#include "gdnls/spacetime_norms.hpp"

namespace gdnls {

/// Final-data problem for the gauged equation: find w on [T, probe_end] with
/// w(t) - e^{it dxx} V_plus -> 0 along the schedule t_n -> infinity.
struct FinalDataProblem {
    Field v_plus;
    int k = 3;
    double T = 1.0;                    ///< left end of the comparison window
    std::vector<double> t_schedule;    ///< strictly increasing, all > T
    double probe_end = 0.0;            ///< right end of the window, <= t_schedule.front()
    double tol_cauchy = 1e-6;          ///< X cap Y distance threshold
    double n0 = 2.0;                   ///< dyadic cutoff for diagnostics
    SolverConfig solver;
    double horizon = 0.0;              ///< free-evolution window for measuring R, delta

    void validate() const;
};

struct CauchyRecord {
    int n = 0;
    double t_n = 0.0;
    double x_distance = 0.0;
    double y_distance = 0.0;
    double distance() const { return x_distance > y_distance ? x_distance : y_distance; }
};

struct WaveOperatorResult {
    Trajectory w_limit;                ///< last iterate on [T, probe_end]
    Trajectory u_limit;                ///< gauge-inverted snapshots (a = -1/2, sigma = k)
    std::vector<CauchyRecord> cauchy_history;
    std::vector<NormReport> iterate_norms;  ///< X/Y norms of every completed iterate
    std::vector<std::pair<double, double>> asymptotic_errors;  ///< t -> ||u - e^{it dxx}V+||_{H^1}
    double r_measured = 0.0;
    double delta_measured = 0.0;
    bool converged = false;
};

struct ChosenParameters {
    double T = 0.0;
    double r_measured = 0.0;
    double delta_measured = 0.0;
};

/// Measures R = ||e^{it dxx} V+||_{X([0, horizon])} and searches the smallest
/// integer T >= 1 with ||e^{it dxx} V+||_{Y([T, horizon])} <= delta_target.
/// Throws std::runtime_error naming the box when no such T exists.
ChosenParameters choose_parameters(const Field& v_plus, int k, double delta_target,
                                   const Grid& grid, double horizon);

/// Backward-integrates the gauged equation from data e^{i t_n dxx} V_plus at
/// each schedule time down to T, recording X cap Y distances of consecutive
/// iterates on [T, probe_end]; stops when the distance falls below tol_cauchy.
WaveOperatorResult solve_final_data(const FinalDataProblem& problem);

/// Per-snapshot H^1 distance to the free evolution of V_plus.
std::vector<std::pair<double, double>> final_state_error(const Trajectory& u_traj,
                                                         const Field& v_plus);

/// One application of the fixed-point map: evaluates the right-hand side of the
/// transformed integral equation with data e^{i t_n dxx} V_plus at t0 = t_n on
/// every snapshot time of w_traj (which must span [T, t_n] on a tiny grid).
Trajectory picard_apply(const Trajectory& w_traj, double t_n, const Field& v_plus,
                        const NormalFormConfig& cfg);

/// (x_norm <= 2R, y_norm <= 2 delta).
std::pair<bool, bool> ball_membership(const NormReport& report, double r, double delta);

}  // namespace gdnls
