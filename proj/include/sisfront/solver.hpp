#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sisfront/model.hpp"

namespace sisfront {

/// Fixed computational grid on [-1, 1]: n interior nodes with spacing
/// dy = 2/(n+1); the endpoints y = +-1 carry the Dirichlet value 0.
struct Grid {
    int n = 0;
    double dy = 0.0;
    std::vector<double> y;  ///< interior coordinates, strictly increasing

    Grid() = default;
    explicit Grid(int n_interior);
};

/// Front positions at one time.
struct FrontState {
    double t = 0.0;
    double g = 0.0;  ///< left front
    double h = 0.0;  ///< right front

    double half_width() const { return 0.5 * (h - g); }
    double midpoint() const { return 0.5 * (g + h); }
    /// Physical coordinate of computational coordinate y in [-1, 1].
    double x_of(double y) const { return midpoint() + y * half_width(); }
};

/// Infected-density profile at the interior grid nodes at one time
/// (I = 0 at the fronts by construction).
struct Snapshot {
    FrontState front;
    std::vector<double> values;

    double sup() const;
};

/// One per-step record of the front history.
struct FrontRecord {
    double t, g, h, gdot, hdot, sup_i;
};

/// Aggregate health counters collected over a run.
struct RunDiagnostics {
    double min_value = 0.0;        ///< most negative pre-clip value seen
    double max_overshoot = 0.0;    ///< largest pre-clip excess above N*
    double max_cell_peclet = 0.0;
    int peclet_warnings = 0;       ///< accepted steps with cell Peclet > limit
    int dt_halvings = 0;
    int velocity_clamps = 0;       ///< Stefan velocities clamped at the C1 bound
    int front_monotonicity_violations = 0;
    int newton_iterations_max = 0;
    int outer_iterations_max = 0;
};

struct Trajectory {
    Grid grid;
    std::vector<Snapshot> snapshots;          ///< thinned by the output stride
    std::vector<FrontRecord> front_history;   ///< every step
    std::vector<std::pair<double, double>> r0f_history;  ///< (t, R0^F(t)), filled by hooks
    RunDiagnostics diagnostics;
    double dt = 0.0;
    double t_end = 0.0;
    bool stopped_early = false;
};

struct SolverOptions {
    double newton_tol = 1e-10;     ///< residual sup-norm
    int newton_max_iter = 25;
    double outer_rel_tol = 1e-9;   ///< front-position change relative to h-g
    int outer_max_iter = 20;
    double clip_tol = 1e-8;        ///< admissible overshoot before a step is rejected
    int max_dt_halvings = 10;
    double peclet_limit = 2.0;
};

struct RunParams {
    double dt = 1e-3;
    int n = 400;
    double t_end = 10.0;
    int output_stride = 100;
    SolverOptions solver;
};

struct RunHooks {
    /// Called for every recorded snapshot (including the initial one).
    std::function<void(const Snapshot&, Trajectory&)> on_sample;
    /// Checked after each sample; returning true ends the run early.
    std::function<bool(const Trajectory&)> stop;
};

/// Step failure (Newton breakdown, invariant violation, degenerate domain).
/// run() retries the step with halved dt before giving up.
struct StepError : NumericError {
    StepError(const std::string& what, int newton_iterations, double residual)
        : NumericError(what), newton_iterations(newton_iterations), residual(residual) {}
    int newton_iterations;
    double residual;
};

/// Diffusion/convection coefficients of the PDE rewritten on the fixed
/// domain by the linear front-fixing map x = midpoint + y * half_width:
///   I_t = diffusion * I_yy - convection * I_y + (beta - gamma) I - (beta/N*) I^2,
/// diffusion = d_I/s^2 and convection = [alpha - ((1-y)/2) g' - ((1+y)/2) h']/s
/// with s the half-width. Throws NumericError when h <= g.
struct TransformedCoefficients {
    double diffusion;
    double convection;
};
TransformedCoefficients transform_coefficients(const FrontState& front, double gdot,
                                               double hdot, double alpha, double d_I,
                                               double y);

/// Stefan front velocities g' = -mu I_x(g), h' = -mu I_x(h) from one-sided
/// second-order stencils. Magnitudes above `bound` are clamped and flagged
/// (the a-priori bound of the continuous problem; pass infinity to disable).
struct FrontVelocities {
    double gdot;
    double hdot;
    bool clamped;
};
FrontVelocities stefan_velocity(const Snapshot& snapshot, const Grid& grid, double mu,
                                double bound);

/// Implicit front-tracking integrator on the fixed grid. A single instance
/// is single-threaded; independent instances may run concurrently.
class FrontFixSolver {
public:
    FrontFixSolver(const ModelSpec& spec, int n_interior, SolverOptions opts = {});

    const Grid& grid() const { return grid_; }
    double velocity_bound() const { return velocity_bound_; }

    /// Initial snapshot: I0 sampled on [-h0, h0].
    Snapshot initial_snapshot() const;

    /// One backward-Euler step of size dt with predictor-corrector front
    /// coupling. Throws StepError when Newton or the outer iteration fails
    /// or the new profile violates 0 <= I <= N* beyond the clip tolerance.
    /// `diag`, when given, accumulates health counters.
    Snapshot step(const Snapshot& from, double dt, RunDiagnostics* diag = nullptr);

    /// step() with recursive dt halving (up to max_dt_halvings levels); the
    /// result always lands exactly at from.t + dt.
    Snapshot step_adaptive(const Snapshot& from, double dt, RunDiagnostics* diag,
                           int depth = 0);

private:
    ModelSpec spec_;
    Grid grid_;
    SolverOptions opts_;
    double velocity_bound_;

    // scratch buffers
    std::vector<double> beta_, gamma_, conv_, u_, u_try_, residual_, delta_;
    std::vector<double> jac_lower_, jac_diag_, jac_upper_, scratch_;

    void eval_coefficients(const FrontState& front, double gdot, double hdot);
    double residual_norm(const std::vector<double>& u, const std::vector<double>& u_old,
                         double dt, double diffusion, std::vector<double>* out);
    int newton_solve(std::vector<double>& u, const std::vector<double>& u_old, double dt,
                     double diffusion);
};

/// Time loop: integrates from t = 0 to t_end recording the per-step front
/// history, stride-thinned snapshots, and hook outputs.
Trajectory run(const ModelSpec& spec, const RunParams& params, const RunHooks& hooks = {});

/// Profile value at physical coordinate x by cubic Hermite interpolation on
/// the snapshot's grid (zero at and beyond the fronts).
double interpolate_profile(const Snapshot& snapshot, const Grid& grid, double x);

}  // namespace sisfront
