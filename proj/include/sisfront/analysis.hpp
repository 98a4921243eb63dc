#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sisfront/equilibrium.hpp"
#include "sisfront/model.hpp"
#include "sisfront/solver.hpp"
#include "sisfront/spectral.hpp"

namespace sisfront {

enum class Verdict { Spreading, Vanishing, Undetermined };

const char* to_string(Verdict v);

/// Rigorous sufficient evidence for spreading: a sampled time with
/// R0^F(t0) >= 1.
struct SpreadingCertificate {
    double t0;
    double r0f_t0;
    double g_t0, h_t0;
};

/// Heuristic three-clause evidence for vanishing over the trailing window:
/// stalled fronts, decayed mass, and terminal R0^DA < 1.
struct VanishingEvidence {
    double window_start;
    double front_advance_g;  ///< advance of -g over the window
    double front_advance_h;  ///< advance of h over the window
    double sup_infected;     ///< largest sup I seen in the window
    double terminal_r0;      ///< R0^DA on the final interval
};

struct OutcomeDiagnostics {
    double horizon = 0.0;
    double final_sup = 0.0;
    double final_g = 0.0, final_h = 0.0;
};

struct Outcome {
    Verdict verdict = Verdict::Undetermined;
    std::optional<SpreadingCertificate> spreading;
    std::optional<VanishingEvidence> vanishing;
    OutcomeDiagnostics diagnostics;
    std::string advice;  ///< set on Undetermined
};

struct ClassifyCriteria {
    double tol_front_rel = 1e-6;     ///< front advance per window, relative to h-g
    double tol_mass_rel = 1e-5;      ///< sup I threshold relative to N*
    double trailing_fraction = 0.2;  ///< trailing window length
    double min_horizon = 1.0;
};

/// Spreading-vanishing dichotomy applied to a finished trajectory.
/// Spreading is certified by any sampled R0^F(t) >= 1 (the trajectory's
/// r0f_history when present, else recomputed from the snapshots); vanishing
/// requires all three evidence clauses over the trailing window; otherwise
/// the verdict is Undetermined with advice to extend the horizon.
Outcome classify(const Trajectory& trajectory, const ModelSpec& spec,
                 const ClassifyCriteria& criteria = {},
                 const SpectralOptions& spectral = {});

struct ClassifiedRun {
    Trajectory trajectory;
    Outcome outcome;
};

/// Runs the solver with an R0^F(t) sampling hook attached (filling
/// r0f_history) and classifies the result. When `early_exit_on_spreading`
/// is set, the run stops at the first sample with R0^F >= 1.
ClassifiedRun run_classified(const ModelSpec& spec, const RunParams& params,
                             const ClassifyCriteria& criteria = {},
                             const SpectralOptions& spectral = {},
                             bool early_exit_on_spreading = true);

struct ProbeRecord {
    double mu;
    Verdict verdict;
    std::optional<double> t0;  ///< certificate time for spreading probes
    double horizon;            ///< horizon at which the verdict was reached
};

struct MuStarResult {
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    std::vector<ProbeRecord> probes;
    bool immediate_zero = false;  ///< R0^F(0) >= 1, so mu* = 0 without probing
};

struct ThresholdOptions {
    RunParams run;                  ///< probe numerics; t_end is the base horizon
    ClassifyCriteria criteria;
    SpectralOptions spectral;
    double width_goal = 0.25;       ///< requested |mu_hi - mu_lo|
    double horizon_cap = 320.0;     ///< Undetermined probes double t_end up to here
    int workers = 1;                ///< concurrent probes per bisection round
};

/// Sharp-threshold search: encloses mu* in [mu_lo, mu_hi] of width <=
/// width_goal by (multi-)section on mu with the classification verdict as
/// the monotone predicate. The bracket must classify Vanishing at its low
/// end and Spreading at its high end. Returns mu* = 0 immediately when
/// R0^F(0) >= 1. Probes that stay Undetermined at the horizon cap throw
/// InconclusiveError carrying the probe mu.
MuStarResult find_mu_star(const ModelSpec& spec, std::pair<double, double> bracket,
                          const ThresholdOptions& opts);

struct SpeedFitOptions {
    double fit_fraction = 0.5;  ///< trailing fraction of the horizon to fit
    double x_far = 10.0;        ///< fronts must clear the coefficient transition region
};

struct SpeedFit {
    double speed;
    double intercept;
    double residual_rms;
};

struct SpeedEstimate {
    SpeedFit left;   ///< fit of -g(t)
    SpeedFit right;  ///< fit of h(t)
    double t_fit_start, t_fit_end;
};

/// Least-squares front speeds over the trailing part of a spreading run,
/// for comparison against the semi-wave speeds. Throws NumericError when
/// the fronts have not cleared |x| > x_far or the tail has too few records.
SpeedEstimate estimate_speeds(const Trajectory& trajectory,
                              const SpeedFitOptions& opts = {});

struct AttractorReport {
    double max_error;  ///< max over the report window of max_x |I - I*|
    std::vector<std::pair<double, double>> error_series;  ///< (t, sup error)
    double window_halfwidth;
};

/// Sup-norm distance between the late-time profiles (last 10% of the
/// horizon) and the equilibrium on [-M, M]. The window must lie inside the
/// final front interval.
AttractorReport verify_attractor(const Trajectory& trajectory,
                                 const EquilibriumProfile& equilibrium,
                                 double window_halfwidth);

}  // namespace sisfront
