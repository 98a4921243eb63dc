#include "sisfront/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisfront/tridiag.hpp"

namespace sisfront {

Grid::Grid(int n_interior) : n(n_interior) {
    if (n < 16) throw ValidationError("grid must have at least 16 interior nodes");
    dy = 2.0 / (n + 1);
    y.resize(n);
    for (int j = 0; j < n; ++j) y[j] = -1.0 + (j + 1) * dy;
}

double Snapshot::sup() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

TransformedCoefficients transform_coefficients(const FrontState& front, double gdot,
                                               double hdot, double alpha, double d_I,
                                               double y) {
    if (!(front.h > front.g))
        throw NumericError("degenerate domain: h <= g");
    const double s = front.half_width();
    const double mesh_velocity = 0.5 * (1.0 - y) * gdot + 0.5 * (1.0 + y) * hdot;
    return {d_I / (s * s), (alpha - mesh_velocity) / s};
}

FrontVelocities stefan_velocity(const Snapshot& snapshot, const Grid& grid, double mu,
                                double bound) {
    const int n = grid.n;
    if (n < 3) throw NumericError("stefan_velocity needs at least 3 interior nodes");
    const double s = snapshot.front.half_width();
    const auto& u = snapshot.values;

    // one-sided 3-point slopes with I = 0 at the front itself
    const double ix_left = (4.0 * u[0] - u[1]) / (2.0 * grid.dy * s);
    const double ix_right = (u[n - 2] - 4.0 * u[n - 1]) / (2.0 * grid.dy * s);

    double gdot = -mu * ix_left;
    double hdot = -mu * ix_right;
    bool clamped = false;
    if (std::abs(gdot) > bound) {
        gdot = std::copysign(bound, gdot);
        clamped = true;
    }
    if (std::abs(hdot) > bound) {
        hdot = std::copysign(bound, hdot);
        clamped = true;
    }
    return {gdot, hdot, clamped};
}

FrontFixSolver::FrontFixSolver(const ModelSpec& spec, int n_interior, SolverOptions opts)
    : spec_(spec), grid_(n_interior), opts_(opts),
      velocity_bound_(front_velocity_bound(spec)) {
    const int n = grid_.n;
    beta_.resize(n);
    gamma_.resize(n);
    conv_.resize(n);
    u_.resize(n);
    u_try_.resize(n);
    residual_.resize(n);
    delta_.resize(n);
    jac_lower_.resize(n - 1);
    jac_diag_.resize(n);
    jac_upper_.resize(n - 1);
    scratch_.resize(2 * n);
}

Snapshot FrontFixSolver::initial_snapshot() const {
    Snapshot snap;
    snap.front = {0.0, -spec_.h0, spec_.h0};
    snap.values.resize(grid_.n);
    for (int j = 0; j < grid_.n; ++j)
        snap.values[j] = spec_.i0.eval(grid_.y[j] * spec_.h0);
    return snap;
}

void FrontFixSolver::eval_coefficients(const FrontState& front, double gdot, double hdot) {
    const double s = front.half_width();
    const double m = front.midpoint();
    for (int j = 0; j < grid_.n; ++j) {
        const double y = grid_.y[j];
        const double x = m + y * s;
        beta_[j] = spec_.beta.eval(x);
        gamma_[j] = spec_.gamma.eval(x);
        const double mesh_velocity = 0.5 * (1.0 - y) * gdot + 0.5 * (1.0 + y) * hdot;
        conv_[j] = (spec_.alpha - mesh_velocity) / s;
    }
}

double FrontFixSolver::residual_norm(const std::vector<double>& u,
                                     const std::vector<double>& u_old, double dt,
                                     double diffusion, std::vector<double>* out) {
    const int n = grid_.n;
    const double dy = grid_.dy;
    const double inv_dy2 = 1.0 / (dy * dy);
    const double inv_2dy = 0.5 / dy;
    double norm = 0.0;
    for (int j = 0; j < n; ++j) {
        const double um = (j > 0) ? u[j - 1] : 0.0;
        const double up = (j + 1 < n) ? u[j + 1] : 0.0;
        const double lap = (um - 2.0 * u[j] + up) * inv_dy2;
        const double grad = (up - um) * inv_2dy;
        const double reaction =
            (beta_[j] - gamma_[j]) * u[j] - (beta_[j] / spec_.n_star) * u[j] * u[j];
        const double f = u[j] - u_old[j] - dt * (diffusion * lap - conv_[j] * grad + reaction);
        if (out) (*out)[j] = f;
        norm = std::max(norm, std::abs(f));
    }
    return norm;
}

int FrontFixSolver::newton_solve(std::vector<double>& u, const std::vector<double>& u_old,
                                 double dt, double diffusion) {
    const int n = grid_.n;
    const double dy = grid_.dy;
    const double inv_dy2 = 1.0 / (dy * dy);
    const double inv_2dy = 0.5 / dy;

    double norm = residual_norm(u, u_old, dt, diffusion, &residual_);
    for (int iter = 0; iter < opts_.newton_max_iter; ++iter) {
        if (norm <= opts_.newton_tol) return iter;

        for (int j = 0; j < n; ++j) {
            jac_diag_[j] = 1.0 - dt * (-2.0 * diffusion * inv_dy2 + beta_[j] - gamma_[j] -
                                       2.0 * (beta_[j] / spec_.n_star) * u[j]);
            if (j > 0) jac_lower_[j - 1] = -dt * (diffusion * inv_dy2 + conv_[j] * inv_2dy);
            if (j + 1 < n) jac_upper_[j] = -dt * (diffusion * inv_dy2 - conv_[j] * inv_2dy);
        }
        for (int j = 0; j < n; ++j) residual_[j] = -residual_[j];
        try {
            thomas_solve_into(jac_lower_, jac_diag_, jac_upper_, residual_, delta_,
                              scratch_);
        } catch (const NumericError&) {
            throw StepError("Newton Jacobian became singular", iter, norm);
        }

        // damped update: accept the first step length that reduces the residual
        double step_scale = 1.0;
        bool accepted = false;
        for (int back = 0; back < 8; ++back) {
            for (int j = 0; j < n; ++j) u_try_[j] = u[j] + step_scale * delta_[j];
            double try_norm = residual_norm(u_try_, u_old, dt, diffusion, &residual_);
            if (try_norm < norm || try_norm <= opts_.newton_tol) {
                u.swap(u_try_);
                norm = try_norm;
                accepted = true;
                break;
            }
            step_scale *= 0.5;
        }
        if (!accepted)
            throw StepError("Newton line search failed to reduce the residual", iter, norm);
    }
    if (norm <= opts_.newton_tol) return opts_.newton_max_iter;
    throw StepError("Newton did not converge", opts_.newton_max_iter, norm);
}

Snapshot FrontFixSolver::step(const Snapshot& from, double dt, RunDiagnostics* diag) {
    if (!(dt > 0.0)) throw NumericError("step requires dt > 0");
    if (static_cast<int>(from.values.size()) != grid_.n)
        throw NumericError("snapshot has " + std::to_string(from.values.size()) +
                           " values but the grid has " + std::to_string(grid_.n) +
                           " interior nodes");

    FrontVelocities v = stefan_velocity(from, grid_, spec_.mu, velocity_bound_);
    if (v.clamped && diag) ++diag->velocity_clamps;

    u_ = from.values;
    double prev_g = from.front.g, prev_h = from.front.h;
    FrontState new_front{};
    bool converged = false;
    int outer = 0;
    for (; outer < opts_.outer_max_iter; ++outer) {
        const double g_new = from.front.g + dt * v.gdot;
        const double h_new = from.front.h + dt * v.hdot;
        if (!(h_new > g_new))
            throw StepError("front update produced a degenerate domain", 0, 0.0);
        new_front = {from.front.t + dt, g_new, h_new};

        eval_coefficients(new_front, v.gdot, v.hdot);
        const double s = new_front.half_width();
        const double diffusion = spec_.d_I / (s * s);
        int iters = newton_solve(u_, from.values, dt, diffusion);
        if (diag) diag->newton_iterations_max = std::max(diag->newton_iterations_max, iters);

        Snapshot trial{new_front, u_};
        FrontVelocities v_next = stefan_velocity(trial, grid_, spec_.mu, velocity_bound_);
        if (v_next.clamped && diag) ++diag->velocity_clamps;

        const double change =
            std::max(std::abs(new_front.g - prev_g), std::abs(new_front.h - prev_h));
        prev_g = new_front.g;
        prev_h = new_front.h;
        if (outer > 0 && change < opts_.outer_rel_tol * (new_front.h - new_front.g)) {
            converged = true;
            break;
        }
        v = v_next;
    }
    if (!converged)
        throw StepError("front corrector iteration did not converge", outer, 0.0);

    // maximum-principle check, then clip the admissible overshoot
    double min_v = 0.0, max_v = 0.0;
    for (double val : u_) {
        min_v = std::min(min_v, val);
        max_v = std::max(max_v, val);
    }
    const double overshoot = max_v - spec_.n_star;
    if (diag) {
        diag->min_value = std::min(diag->min_value, min_v);
        diag->max_overshoot = std::max(diag->max_overshoot, overshoot);
        diag->outer_iterations_max = std::max(diag->outer_iterations_max, outer + 1);
    }
    if (min_v < -opts_.clip_tol || overshoot > opts_.clip_tol) {
        std::ostringstream os;
        os << "step rejected: profile leaves [0, N*] beyond tolerance (min " << min_v
           << ", overshoot " << overshoot << ")";
        throw StepError(os.str(), 0, 0.0);
    }
    for (double& val : u_) val = std::clamp(val, 0.0, spec_.n_star);

    if (diag) {
        double max_conv = 0.0;
        for (double c : conv_) max_conv = std::max(max_conv, std::abs(c));
        const double s = new_front.half_width();
        const double peclet = max_conv * s * s * grid_.dy / spec_.d_I;
        diag->max_cell_peclet = std::max(diag->max_cell_peclet, peclet);
        if (peclet > opts_.peclet_limit) ++diag->peclet_warnings;
    }

    return Snapshot{new_front, u_};
}

Snapshot FrontFixSolver::step_adaptive(const Snapshot& from, double dt,
                                       RunDiagnostics* diag, int depth) {
    try {
        return step(from, dt, diag);
    } catch (const StepError&) {
        if (depth >= opts_.max_dt_halvings) throw;
        if (diag) ++diag->dt_halvings;
        Snapshot mid = step_adaptive(from, 0.5 * dt, diag, depth + 1);
        return step_adaptive(mid, 0.5 * dt, diag, depth + 1);
    }
}

Trajectory run(const ModelSpec& spec, const RunParams& params, const RunHooks& hooks) {
    require_valid(spec);
    if (!(params.dt > 0.0) || !(params.t_end > 0.0))
        throw ValidationError("run requires dt > 0 and t_end > 0");
    if (params.output_stride < 1) throw ValidationError("output stride must be >= 1");

    FrontFixSolver solver(spec, params.n, params.solver);

    const long steps = std::lround(std::ceil(params.t_end / params.dt - 1e-9));

    Trajectory traj;
    traj.grid = solver.grid();
    traj.dt = params.dt;
    traj.t_end = steps * params.dt;

    Snapshot snap = solver.initial_snapshot();
    {
        FrontVelocities v0 =
            stefan_velocity(snap, traj.grid, spec.mu, solver.velocity_bound());
        traj.front_history.push_back(
            {0.0, snap.front.g, snap.front.h, v0.gdot, v0.hdot, snap.sup()});
    }
    traj.snapshots.push_back(snap);
    if (hooks.on_sample) hooks.on_sample(snap, traj);
    if (hooks.stop && hooks.stop(traj)) {
        traj.stopped_early = true;
        return traj;
    }

    for (long i = 1; i <= steps; ++i) {
        const double sup_before = snap.sup();
        Snapshot next = solver.step_adaptive(snap, params.dt, &traj.diagnostics);
        next.front.t = i * params.dt;  // keep output times exactly on the nominal grid

        traj.front_history.push_back({next.front.t, next.front.g, next.front.h,
                                      (next.front.g - snap.front.g) / params.dt,
                                      (next.front.h - snap.front.h) / params.dt,
                                      next.sup()});
        if (sup_before > 1e-12 &&
            (!(next.front.g < snap.front.g) || !(next.front.h > snap.front.h)))
            ++traj.diagnostics.front_monotonicity_violations;

        snap = std::move(next);
        if (i % params.output_stride == 0 || i == steps) {
            traj.snapshots.push_back(snap);
            if (hooks.on_sample) hooks.on_sample(snap, traj);
            if (hooks.stop && hooks.stop(traj)) {
                traj.stopped_early = true;
                break;
            }
        }
    }
    return traj;
}

double interpolate_profile(const Snapshot& snapshot, const Grid& grid, double x) {
    const double s = snapshot.front.half_width();
    const double y = (x - snapshot.front.midpoint()) / s;
    if (y <= -1.0 || y >= 1.0) return 0.0;

    const int n = grid.n;
    const double dy = grid.dy;
    // node k in the padded array [0, u_1..u_n, 0] of size n+2 at y = -1 + k*dy
    auto value = [&](int k) -> double {
        if (k <= 0 || k >= n + 1) return 0.0;
        return snapshot.values[k - 1];
    };
    auto slope = [&](int k) -> double {  // centered dI/dy with zero padding
        return (value(k + 1) - value(k - 1)) / (2.0 * dy);
    };

    int cell = static_cast<int>(std::floor((y + 1.0) / dy));
    cell = std::clamp(cell, 0, n);
    const double y_left = -1.0 + cell * dy;
    const double t = (y - y_left) / dy;

    const double v0 = value(cell), v1 = value(cell + 1);
    const double m0 = slope(cell) * dy, m1 = slope(cell + 1) * dy;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * m1;
}

}  // namespace sisfront
