#include "sisfront/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace sisfront {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Spreading: return "Spreading";
        case Verdict::Vanishing: return "Vanishing";
        default: return "Undetermined";
    }
}

Outcome classify(const Trajectory& trajectory, const ModelSpec& spec,
                 const ClassifyCriteria& criteria, const SpectralOptions& spectral) {
    if (trajectory.front_history.empty())
        throw ValidationError("classify needs a nonempty trajectory");
    const double horizon = trajectory.front_history.back().t;

    Outcome outcome;
    const auto& last = trajectory.front_history.back();
    outcome.diagnostics = {horizon, last.sup_i, last.g, last.h};

    // R0^F samples: prefer what the run hook recorded
    std::vector<std::pair<double, double>> series = trajectory.r0f_history;
    if (series.empty()) series = r0_free_series(trajectory, spec, spectral);

    for (const auto& [t, r] : series) {
        if (r >= 1.0) {
            double g_t = trajectory.front_history.front().g;
            double h_t = trajectory.front_history.front().h;
            for (const auto& rec : trajectory.front_history) {
                if (rec.t > t + 1e-12) break;
                g_t = rec.g;
                h_t = rec.h;
            }
            outcome.verdict = Verdict::Spreading;
            outcome.spreading = SpreadingCertificate{t, r, g_t, h_t};
            return outcome;
        }
    }

    // a run can end before the minimum horizon only by certifying spreading
    if (horizon + 1e-12 < criteria.min_horizon)
        throw ValidationError("trajectory horizon " + std::to_string(horizon) +
                              " is below the configured minimum " +
                              std::to_string(criteria.min_horizon));

    // vanishing evidence over the trailing window
    const double window_start = horizon * (1.0 - criteria.trailing_fraction);
    const FrontRecord* first_in_window = nullptr;
    double window_sup = 0.0;
    for (const auto& rec : trajectory.front_history) {
        if (rec.t < window_start) continue;
        if (!first_in_window) first_in_window = &rec;
        window_sup = std::max(window_sup, rec.sup_i);
    }
    if (first_in_window) {
        const double width = last.h - last.g;
        const double adv_h = last.h - first_in_window->h;
        const double adv_g = first_in_window->g - last.g;
        const bool fronts_stalled = adv_h < criteria.tol_front_rel * width &&
                                    adv_g < criteria.tol_front_rel * width;
        const bool mass_decayed = window_sup < criteria.tol_mass_rel * spec.n_star;
        if (fronts_stalled && mass_decayed) {
            const double terminal_r0 =
                r0_dirichlet_advection({last.g, last.h}, spec, spectral).value;
            if (terminal_r0 < 1.0) {
                outcome.verdict = Verdict::Vanishing;
                outcome.vanishing = VanishingEvidence{window_start, adv_g, adv_h,
                                                      window_sup, terminal_r0};
                return outcome;
            }
        }
    }

    outcome.verdict = Verdict::Undetermined;
    outcome.advice = "no verdict within horizon " + std::to_string(horizon) +
                     "; extend t_end";
    return outcome;
}

ClassifiedRun run_classified(const ModelSpec& spec, const RunParams& params,
                             const ClassifyCriteria& criteria,
                             const SpectralOptions& spectral,
                             bool early_exit_on_spreading) {
    RunHooks hooks;
    hooks.on_sample = [&spec, &spectral](const Snapshot& snap, Trajectory& traj) {
        double r0 =
            r0_dirichlet_advection({snap.front.g, snap.front.h}, spec, spectral).value;
        traj.r0f_history.emplace_back(snap.front.t, r0);
    };
    if (early_exit_on_spreading)
        hooks.stop = [](const Trajectory& traj) {
            return !traj.r0f_history.empty() && traj.r0f_history.back().second >= 1.0;
        };

    ClassifiedRun result;
    result.trajectory = run(spec, params, hooks);
    result.outcome = classify(result.trajectory, spec, criteria, spectral);
    return result;
}

namespace {

ProbeRecord probe_mu(const ModelSpec& base, double mu, const ThresholdOptions& opts) {
    ModelSpec spec = base;
    spec.mu = mu;

    RunParams params = opts.run;
    for (;;) {
        ClassifiedRun run = run_classified(spec, params, opts.criteria, opts.spectral,
                                           /*early_exit_on_spreading=*/true);
        if (run.outcome.verdict != Verdict::Undetermined) {
            ProbeRecord rec{mu, run.outcome.verdict, std::nullopt,
                            run.outcome.diagnostics.horizon};
            if (run.outcome.spreading) rec.t0 = run.outcome.spreading->t0;
            return rec;
        }
        if (params.t_end * 2.0 > opts.horizon_cap * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "threshold probe at mu = " << mu
               << " stayed Undetermined up to horizon " << params.t_end
               << " (cap " << opts.horizon_cap << ")";
            throw InconclusiveError(os.str());
        }
        params.t_end *= 2.0;
    }
}

}  // namespace

MuStarResult find_mu_star(const ModelSpec& spec, std::pair<double, double> bracket,
                          const ThresholdOptions& opts) {
    auto [mu_lo, mu_hi] = bracket;
    if (!(mu_lo > 0.0) || !(mu_hi > mu_lo))
        throw ValidationError("threshold bracket must satisfy 0 < mu_lo < mu_hi");

    MuStarResult result;

    // R0^F(0) >= 1 forces spreading for every mu, hence mu* = 0
    const double r0_initial =
        r0_dirichlet_advection({-spec.h0, spec.h0}, spec, opts.spectral).value;
    if (r0_initial >= 1.0) {
        result.immediate_zero = true;
        result.mu_lo = result.mu_hi = 0.0;
        return result;
    }

    auto record = [&result](ProbeRecord rec) {
        result.probes.push_back(rec);
        return rec.verdict;
    };

    if (record(probe_mu(spec, mu_lo, opts)) != Verdict::Vanishing)
        throw ValidationError("bracket low end mu = " + std::to_string(mu_lo) +
                              " did not classify as Vanishing");
    if (record(probe_mu(spec, mu_hi, opts)) != Verdict::Spreading)
        throw ValidationError("bracket high end mu = " + std::to_string(mu_hi) +
                              " did not classify as Spreading");

    const int workers = std::max(1, opts.workers);
    while (mu_hi - mu_lo > opts.width_goal) {
        std::vector<double> points(workers);
        for (int i = 0; i < workers; ++i)
            points[i] = mu_lo + (mu_hi - mu_lo) * (i + 1) / (workers + 1);

        std::vector<ProbeRecord> round;
        if (workers == 1) {
            round.push_back(probe_mu(spec, points[0], opts));
        } else {
            std::vector<std::future<ProbeRecord>> futures;
            futures.reserve(workers);
            for (double mu : points)
                futures.push_back(std::async(std::launch::async, probe_mu, std::cref(spec),
                                             mu, std::cref(opts)));
            for (auto& f : futures) round.push_back(f.get());  // deterministic probe order
        }

        double new_lo = mu_lo, new_hi = mu_hi;
        bool seen_spreading = false;
        for (const auto& rec : round) {
            record(rec);
            if (rec.verdict == Verdict::Spreading) {
                if (!seen_spreading) new_hi = rec.mu;
                seen_spreading = true;
            } else {
                if (seen_spreading)
                    throw NumericError(
                        "threshold probes are not monotone in mu: Vanishing at mu = " +
                        std::to_string(rec.mu) + " above a Spreading probe");
                new_lo = rec.mu;
            }
        }
        mu_lo = new_lo;
        mu_hi = new_hi;
    }

    result.mu_lo = mu_lo;
    result.mu_hi = mu_hi;
    return result;
}

namespace {

SpeedFit fit_line(const std::vector<std::pair<double, double>>& pts) {
    const double n = static_cast<double>(pts.size());
    double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    for (const auto& [t, v] : pts) {
        st += t;
        sv += v;
        stt += t * t;
        stv += t * v;
    }
    const double denom = n * stt - st * st;
    const double slope = (n * stv - st * sv) / denom;
    const double intercept = (sv - slope * st) / n;
    double ss = 0.0;
    for (const auto& [t, v] : pts) {
        const double r = v - (slope * t + intercept);
        ss += r * r;
    }
    return {slope, intercept, std::sqrt(ss / n)};
}

}  // namespace

SpeedEstimate estimate_speeds(const Trajectory& trajectory, const SpeedFitOptions& opts) {
    if (trajectory.front_history.size() < 16)
        throw NumericError("estimate_speeds: too few front records");
    const auto& last = trajectory.front_history.back();
    if (!(last.h > opts.x_far) || !(-last.g > opts.x_far))
        throw NumericError(
            "estimate_speeds: fronts have not cleared the coefficient transition "
            "region |x| > " +
            std::to_string(opts.x_far));

    const double horizon = last.t;
    const double t_start = horizon * (1.0 - opts.fit_fraction);
    std::vector<std::pair<double, double>> right, left;
    for (const auto& rec : trajectory.front_history) {
        if (rec.t < t_start) continue;
        right.emplace_back(rec.t, rec.h);
        left.emplace_back(rec.t, -rec.g);
    }
    if (right.size() < 8) throw NumericError("estimate_speeds: insufficient tail data");

    SpeedEstimate est;
    est.right = fit_line(right);
    est.left = fit_line(left);
    est.t_fit_start = right.front().first;
    est.t_fit_end = right.back().first;
    return est;
}

AttractorReport verify_attractor(const Trajectory& trajectory,
                                 const EquilibriumProfile& equilibrium,
                                 double window_halfwidth) {
    if (trajectory.snapshots.empty())
        throw ValidationError("verify_attractor needs snapshots");
    const double horizon = trajectory.snapshots.back().front.t;
    const double t_start = horizon * 0.9;

    AttractorReport report;
    report.window_halfwidth = window_halfwidth;
    report.max_error = 0.0;

    const int probes = 201;
    bool any = false;
    for (const auto& snap : trajectory.snapshots) {
        if (snap.front.t < t_start) continue;
        if (snap.front.g > -window_halfwidth || snap.front.h < window_halfwidth)
            throw NumericError("verify_attractor: window [-" +
                               std::to_string(window_halfwidth) + ", " +
                               std::to_string(window_halfwidth) +
                               "] lies outside the fronts at t = " +
                               std::to_string(snap.front.t));
        double err = 0.0;
        for (int i = 0; i < probes; ++i) {
            const double x =
                -window_halfwidth + 2.0 * window_halfwidth * i / (probes - 1);
            const double iv = interpolate_profile(snap, trajectory.grid, x);
            err = std::max(err, std::abs(iv - equilibrium.at(x)));
        }
        report.error_series.emplace_back(snap.front.t, err);
        report.max_error = std::max(report.max_error, err);
        any = true;
    }
    if (!any) throw NumericError("verify_attractor: no snapshots in the report window");
    return report;
}

}  // namespace sisfront
