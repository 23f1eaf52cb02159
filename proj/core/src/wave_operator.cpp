#include "gdnls/wave_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdnls {

void FinalDataProblem::validate() const {
    gdnls::validate(v_plus);
    if (k < 3) throw std::invalid_argument("FinalDataProblem: k must be >= 3");
    if (!(T >= 1.0)) throw std::invalid_argument("FinalDataProblem: T must be >= 1");
    if (t_schedule.empty()) throw std::invalid_argument("FinalDataProblem: empty schedule");
    double prev = T;
    for (double t : t_schedule) {
        if (!(t > prev)) throw std::invalid_argument("FinalDataProblem: schedule must increase past T");
        prev = t;
    }
    if (!(probe_end > T) || probe_end > t_schedule.front()) {
        throw std::invalid_argument("FinalDataProblem: need T < probe_end <= t_1");
    }
    if (horizon > 0.0 && t_schedule.back() > horizon) {
        throw std::invalid_argument("FinalDataProblem: schedule exceeds the stated horizon");
    }
}

namespace {

// Snapshots of e^{it dxx} v on [t_start, t_end]; cheap multiplier evaluations.
Trajectory free_trajectory(const Field& v, double t_start, double t_end, double stride) {
    Trajectory traj;
    traj.grid = v.grid;
    traj.config.kind = RhsKind::linear;
    const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(
        std::ceil((t_end - t_start) / stride)));
    Field base = v;
    base.time = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n);
        traj.times.push_back(t);
        traj.snapshots.push_back(free_propagate(base, t));
    }
    return traj;
}

Trajectory reversed(Trajectory traj) {
    std::reverse(traj.times.begin(), traj.times.end());
    std::reverse(traj.snapshots.begin(), traj.snapshots.end());
    return traj;
}

}  // namespace

ChosenParameters choose_parameters(const Field& v_plus, int k, double delta_target,
                                   const Grid& grid, double horizon) {
    gdnls::validate(v_plus);
    if (!(v_plus.grid == grid)) throw std::invalid_argument("choose_parameters: grid mismatch");
    if (!(horizon > 2.0)) throw std::invalid_argument("choose_parameters: horizon too short");
    (void)k;

    const Trajectory free = free_trajectory(v_plus, 0.0, horizon, 0.125);
    ChosenParameters out;
    out.r_measured = norm_report(free).x_norm;
    if (out.r_measured == 0.0) {
        out.T = 1.0;
        out.delta_measured = 0.0;
        return out;
    }
    for (double t = 1.0; t <= horizon - 1.0; t += 1.0) {
        const double y = ynorm(restrict_trajectory(free, t, horizon));
        if (y <= delta_target) {
            out.T = t;
            out.delta_measured = y;
            return out;
        }
    }
    throw std::runtime_error(
        "choose_parameters: no T below the horizon reaches delta_target; the box ("
        + std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) +
        ") is too small for the requested dispersive smallness");
}

WaveOperatorResult solve_final_data(const FinalDataProblem& problem) {
    problem.validate();
    const double horizon = problem.horizon > 0.0 ? problem.horizon : problem.t_schedule.back();

    WaveOperatorResult result;
    {
        const Trajectory free = free_trajectory(problem.v_plus, 0.0, horizon, 0.125);
        result.r_measured = norm_report(free).x_norm;
        result.delta_measured = ynorm(restrict_trajectory(free, problem.T, horizon));
    }

    SolverConfig cfg = problem.solver;
    cfg.kind = RhsKind::gauged;
    cfg.sigma = static_cast<double>(problem.k);
    cfg.direction = Direction::backward;

    Field base = problem.v_plus;
    base.time = 0.0;

    Trajectory previous;
    bool have_previous = false;
    int n_index = 0;
    for (double t_n : problem.t_schedule) {
        ++n_index;
        const Field data = free_propagate(base, t_n);

        // carry the state down to the window without storing, then sample it
        Trajectory window;
        try {
            SolverConfig sparse = cfg;
            sparse.store_every = 0;
            const Trajectory carry = evolve(data, t_n, problem.probe_end, sparse);
            window = reversed(evolve(carry.snapshots.back(), problem.probe_end, problem.T, cfg));
        } catch (const BlowupError& e) {
            throw std::runtime_error("solve_final_data: blowup in iterate n = " +
                                     std::to_string(n_index) + " at t = " +
                                     std::to_string(e.time));
        }

        result.iterate_norms.push_back(norm_report(window));
        if (have_previous) {
            const NormReport d = traj_distance(window, previous);
            CauchyRecord rec;
            rec.n = n_index;
            rec.t_n = t_n;
            rec.x_distance = d.x_norm;
            rec.y_distance = d.y_norm;
            result.cauchy_history.push_back(rec);
            previous = window;
            if (rec.distance() <= problem.tol_cauchy) {
                result.converged = true;
                break;
            }
        } else {
            previous = window;
            have_previous = true;
        }
    }

    result.w_limit = previous;
    result.u_limit = previous;
    const GaugeParams gauge{-0.5, static_cast<double>(problem.k)};
    for (auto& snap : result.u_limit.snapshots) snap = gauge_inverse(snap, gauge);
    result.asymptotic_errors = final_state_error(result.u_limit, problem.v_plus);
    return result;
}

std::vector<std::pair<double, double>> final_state_error(const Trajectory& u_traj,
                                                         const Field& v_plus) {
    gdnls::validate(v_plus);
    if (!(u_traj.grid == v_plus.grid)) {
        throw std::invalid_argument("final_state_error: grid mismatch");
    }
    Field base = v_plus;
    base.time = 0.0;
    std::vector<std::pair<double, double>> out;
    out.reserve(u_traj.size());
    for (std::size_t i = 0; i < u_traj.size(); ++i) {
        const double t = u_traj.times[i];
        out.emplace_back(t, sobolev_norm(u_traj.snapshots[i] - free_propagate(base, t), 1.0));
    }
    return out;
}

Trajectory picard_apply(const Trajectory& w_traj, double t_n, const Field& v_plus,
                        const NormalFormConfig& cfg) {
    cfg.validate();
    if (w_traj.snapshots.empty()) throw std::invalid_argument("picard_apply: empty trajectory");
    if (w_traj.grid.m > cfg.grid_cap) {
        throw std::invalid_argument("picard_apply: M exceeds grid_cap (direct transform cost guard)");
    }
    const std::size_t count = w_traj.size();
    if (count < 2) throw std::invalid_argument("picard_apply: need at least two snapshots");
    for (std::size_t i = 0; i + 1 < count; ++i) {
        if (!(w_traj.times[i] < w_traj.times[i + 1])) {
            throw std::invalid_argument("picard_apply: times must ascend to t_n");
        }
    }
    if (std::abs(w_traj.times.back() - t_n) > 1e-9 * std::max(1.0, std::abs(t_n))) {
        throw std::invalid_argument("picard_apply: trajectory must end at t_n");
    }

    Field base = v_plus;
    base.time = 0.0;
    const Field data = free_propagate(base, t_n);

    Trajectory out;
    out.grid = w_traj.grid;
    out.times = w_traj.times;
    out.config = w_traj.config;

    if (w_traj.config.kind == RhsKind::linear) {
        for (double t : w_traj.times) out.snapshots.push_back(free_propagate(base, t));
        return out;
    }

    const double k = static_cast<double>(cfg.k);
    const double n_start = 2.0 * cfg.n0;  // consistent split with the verbatim resonance sum
    const auto signs = iota(cfg.k);
    const std::size_t slots = 2 * static_cast<std::size_t>(cfg.k) + 1;

    auto omega_all = [&](const Field& f) {
        std::vector<Field> fields(slots, f);
        return detail::omega_impl(fields, cfg, n_start);
    };

    // per-snapshot pieces, independent of the evaluation time
    std::vector<Field> f12_at(count, zero_field(w_traj.grid));
    std::vector<Field> res_at(count, zero_field(w_traj.grid));
    std::vector<std::vector<Field>> omega_slot_at(count);
    for (std::size_t s = 0; s < count; ++s) {
        const Field& ws = w_traj.snapshots[s];
        f12_at[s] = f1(ws, k) + f2(ws, k);
        res_at[s] = resonance(ws, cfg);
        const Field forcing = f1(ws, k) + f2(ws, k) + f3(ws, k);
        std::vector<Field> fields(slots, ws);
        omega_slot_at[s].reserve(slots);
        for (std::size_t l = 1; l <= slots; ++l) {
            fields[l - 1] = forcing;
            omega_slot_at[s].push_back(detail::omega_impl(fields, cfg, n_start));
            fields[l - 1] = ws;
        }
    }
    const Field omega_data = omega_all(data);

    for (std::size_t i = 0; i < count; ++i) {
        const double t_i = w_traj.times[i];
        Field value = free_propagate(data, t_i - t_n);
        value = value + (-k) * free_propagate(omega_data, t_i - t_n);
        value = value + k * omega_all(w_traj.snapshots[i]);

        const std::size_t len = count - 1 - i;
        if (len > 0) {
            const double h = (w_traj.times.back() - t_i) / static_cast<double>(len);
            const auto weights = detail::quadrature_weights(len, h);
            for (std::size_t s = i; s < count; ++s) {
                const double weight = -weights[s - i];  // int from t_n down to t_i
                if (weight == 0.0) continue;
                const double lag = t_i - w_traj.times[s];
                value = value + (Complex{0.0, -1.0} * weight) * free_propagate(f12_at[s], lag);
                value = value + (k * weight) * free_propagate(res_at[s], lag);
                for (std::size_t l = 1; l <= slots; ++l) {
                    const double slot_sign = -static_cast<double>(signs[l - 1]);
                    value = value + (Complex{0.0, -k} * slot_sign * weight) *
                                        free_propagate(omega_slot_at[s][l - 1], lag);
                }
            }
        }
        value.time = t_i;
        out.snapshots.push_back(std::move(value));
    }
    return out;
}

std::pair<bool, bool> ball_membership(const NormReport& report, double r, double delta) {
    return {report.x_norm <= 2.0 * r, report.y_norm <= 2.0 * delta};
}

}  // namespace gdnls
