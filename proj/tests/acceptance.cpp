// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sisfront/analysis.hpp"
#include "sisfront/config.hpp"
#include "sisfront/equilibrium.hpp"
#include "sisfront/semiwave.hpp"
#include "sisfront/spectral.hpp"

using namespace sisfront;

namespace {

struct CheckFailure {
    std::string message;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure{message};
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, format);
    std::vsnprintf(buf, sizeof(buf), format, ap);
    va_end(ap);
    return buf;
}

// trajectories kept for the cross-cutting criteria 7 and 8
struct SuiteRun {
    std::string name;
    ModelSpec spec;
    Trajectory trajectory;
    Verdict verdict;
};
std::vector<SuiteRun> g_runs;

ModelSpec constant_high_risk(double alpha, double mu) {
    ModelSpec spec = reference_model(alpha, mu);
    spec.beta = Expression::parse("4");
    spec.gamma = Expression::parse("1");
    return spec;
}

SpectralOptions suite_spectral() {
    SpectralOptions opts;
    opts.n = 400;
    return opts;
}

// ---------------------------------------------------------------- criterion 1
std::string criterion_closed_form_r0() {
    ModelSpec no_adv = constant_high_risk(0.0, 6.0);
    const double r_no = r0_dirichlet_advection({-1.0, 1.0}, no_adv).value;
    const double exact_no = 4.0 / (M_PI * M_PI + 1.0);
    require(std::abs(r_no - exact_no) < 1e-6,
            fmt("alpha=0: |%.12f - %.12f| >= 1e-6", r_no, exact_no));

    ModelSpec adv = constant_high_risk(1.5, 6.0);
    const double r_adv = r0_dirichlet_advection({-1.0, 1.0}, adv).value;
    const double exact_adv = 4.0 / (M_PI * M_PI + 1.5 * 1.5 / 16.0 + 1.0);
    require(std::abs(r_adv - exact_adv) < 1e-6,
            fmt("alpha=1.5: |%.12f - %.12f| >= 1e-6", r_adv, exact_adv));

    return fmt("R0(0)=%.9f err %.1e; R0(1.5)=%.9f err %.1e", r_no,
               std::abs(r_no - exact_no), r_adv, std::abs(r_adv - exact_adv));
}

// ---------------------------------------------------------------- criterion 2
std::string criterion_sign_relation() {
    ModelSpec base = reference_model(0.0, 6.0);
    SpectralOptions opts = suite_spectral();
    int checked = 0;
    for (double len : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
            ModelSpec spec = base;
            spec.alpha = alpha;
            SpectralResult result = spectral_result({-len / 2, len / 2}, spec, opts);
            if (std::abs(1.0 - result.r0) > 1e-8) {
                require((1.0 - result.r0) * result.lambda0 > 0.0,
                        fmt("sign mismatch at len=%g alpha=%g: R0=%.9f lambda0=%.3e",
                            len, alpha, result.r0, result.lambda0));
            }
            ++checked;
        }
    }
    return fmt("%d (interval, alpha) pairs, no exceptions", checked);
}

// ---------------------------------------------------------------- criterion 3
std::string criterion_example_71() {
    std::ostringstream detail;
    for (double alpha : {1.5, -1.5}) {
        ModelSpec spec = reference_model(alpha, 6.0);
        RunParams params;
        params.dt = 1e-3;
        params.n = 400;
        params.t_end = 10.0;
        params.output_stride = 500;
        auto cr = run_classified(spec, params, {}, suite_spectral(),
                                 /*early_exit_on_spreading=*/false);
        g_runs.push_back({fmt("ex71 alpha=%+.1f", alpha), spec, cr.trajectory,
                          cr.outcome.verdict});

        require(cr.outcome.verdict == Verdict::Spreading,
                fmt("alpha=%+.1f did not classify as Spreading", alpha));
        require(cr.outcome.spreading.has_value() && cr.outcome.spreading->t0 >= 0.0,
                "missing finite certificate time");

        const auto& last = cr.trajectory.front_history.back();
        const double right_gain = last.h - spec.h0;
        const double left_gain = -last.g - spec.h0;
        if (alpha > 0)
            require(right_gain > left_gain,
                    fmt("alpha=+1.5: right gain %.3f <= left gain %.3f", right_gain,
                        left_gain));
        else
            require(left_gain > right_gain,
                    fmt("alpha=-1.5: left gain %.3f <= right gain %.3f", left_gain,
                        right_gain));
        detail << fmt("a=%+.1f t0=%.2f h-h0=%.2f -g-h0=%.2f  ", alpha,
                      cr.outcome.spreading->t0, right_gain, left_gain);
    }
    return detail.str();
}

// ---------------------------------------------------------------- criterion 4
std::string criterion_example_72() {
    std::ostringstream detail;
    for (double alpha : {1.5, -1.5}) {
        ModelSpec spec = reference_model(alpha, 1.0);
        RunParams params;
        params.dt = 2e-3;
        params.n = 256;
        params.t_end = 40.0;
        params.output_stride = 250;
        auto cr = run_classified(spec, params, {}, suite_spectral());
        g_runs.push_back({fmt("ex72 alpha=%+.1f", alpha), spec, cr.trajectory,
                          cr.outcome.verdict});

        require(cr.outcome.verdict == Verdict::Vanishing,
                fmt("alpha=%+.1f did not classify as Vanishing", alpha));
        require(cr.outcome.vanishing->sup_infected < 1e-5 * spec.n_star,
                fmt("sup I %.3e not below 1e-5 N*", cr.outcome.vanishing->sup_infected));
        detail << fmt("a=%+.1f supI=%.1e R0end=%.3f  ", alpha,
                      cr.outcome.vanishing->sup_infected,
                      cr.outcome.vanishing->terminal_r0);
    }
    return detail.str();
}

// ---------------------------------------------------------------- criterion 5
std::string criterion_speed_match() {
    ModelSpec spec = constant_high_risk(1.5, 6.0);
    RunParams params;
    params.dt = 1e-3;
    params.n = 2000;
    params.t_end = 40.0;
    params.output_stride = 1000;
    Trajectory traj = run(spec, params);

    auto est = estimate_speeds(traj);
    auto right = semiwave_speed(Direction::Rightward, spec);
    auto left = semiwave_speed(Direction::Leftward, spec);
    ModelSpec no_drift = constant_high_risk(0.0, 6.0);
    auto k0 = semiwave_speed(Direction::Rightward, no_drift);

    const double err_r = std::abs(est.right.speed - right.k_star) / right.k_star;
    const double err_l = std::abs(est.left.speed - left.k_star) / left.k_star;
    require(err_r < 0.10, fmt("right speed off by %.1f%%", 100 * err_r));
    require(err_l < 0.10, fmt("left speed off by %.1f%%", 100 * err_l));
    require(left.k_star < k0.k_star && k0.k_star < right.k_star,
            fmt("ordering violated: k_l*=%.6f k0=%.6f k_r*=%.6f", left.k_star,
                k0.k_star, right.k_star));

    g_runs.push_back({"speed-match (constant coefficients)", spec, std::move(traj),
                      Verdict::Spreading});
    return fmt("right %.4f vs k_r* %.4f (%.2f%%); left %.4f vs k_l* %.4f (%.2f%%); "
               "k_l* < k0 < k_r*",
               est.right.speed, right.k_star, 100 * err_r, est.left.speed, left.k_star,
               100 * err_l);
}

// ---------------------------------------------------------------- criterion 6
std::string criterion_mu_monotonicity() {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    std::uniform_real_distribution<double> freq(0.5, 2.5);
    std::uniform_real_distribution<double> mu_low(1.5, 3.0);
    std::uniform_real_distribution<double> mu_gap(1.0, 3.0);

    int spread_count = 0;
    for (int draw = 0; draw < 5; ++draw) {
        const double cb = amp(rng), kb = freq(rng);
        const double cg = amp(rng), kg = freq(rng);
        const double mu1 = mu_low(rng);
        const double mu2 = mu1 + mu_gap(rng);

        ModelSpec base = reference_model(1.5, mu1);
        base.beta = Expression::parse(
            fmt("4 + 2*sin(x)/(1+x^2) + %.3f*cos(%.3f*x)/(1+x^2)", cb, kb));
        base.gamma = Expression::parse(
            fmt("1 + cos(x)/(1+x^2) + %.3f*sin(%.3f*x)/(1+x^2)", cg, kg));
        require_valid(base);

        RunParams params;
        params.dt = 1e-3;
        params.n = 300;
        params.t_end = 3.0;
        params.output_stride = 250;

        ModelSpec fast = base;
        fast.mu = mu2;
        Trajectory t1 = run(base, params);
        Trajectory t2 = run(fast, params);
        require(t1.snapshots.size() == t2.snapshots.size(), "output times mismatch");

        for (std::size_t k = 0; k < t1.snapshots.size(); ++k) {
            const auto& s1 = t1.snapshots[k];
            const auto& s2 = t2.snapshots[k];
            require(s1.front.h <= s2.front.h + 1e-6 && s2.front.g <= s1.front.g + 1e-6,
                    fmt("draw %d: interval containment failed at t=%.2f", draw,
                        s1.front.t));
            for (int i = 0; i <= 100; ++i) {
                const double x = s1.front.g + (s1.front.h - s1.front.g) * i / 100.0;
                const double v1 = interpolate_profile(s1, t1.grid, x);
                const double v2 = interpolate_profile(s2, t2.grid, x);
                require(v1 <= v2 + 1e-6,
                        fmt("draw %d: I-ordering failed at t=%.2f x=%.3f (%.2e > %.2e)",
                            draw, s1.front.t, x, v1, v2));
            }
        }

        // keep the faster run for the cross-cutting criteria; classify it
        auto outcome = [&] {
            SpectralOptions sopt = suite_spectral();
            auto series = r0_free_series(t2, fast, sopt);
            for (const auto& [t, r] : series)
                if (r >= 1.0) return Verdict::Spreading;
            return Verdict::Undetermined;
        }();
        if (outcome == Verdict::Spreading) ++spread_count;
        g_runs.push_back({fmt("mu-pair draw %d (mu=%.2f)", draw, mu2), fast,
                          std::move(t2), outcome});
        g_runs.push_back({fmt("mu-pair draw %d (mu=%.2f)", draw, mu1), base,
                          std::move(t1), Verdict::Undetermined});
    }
    return fmt("5 draws, containment and pointwise ordering at every matched time "
               "(%d fast runs certified spreading)",
               spread_count);
}

// ---------------------------------------------------------------- criterion 7
std::string criterion_r0f_monotonicity() {
    SpectralOptions opts = suite_spectral();
    int series_checked = 0;
    for (const auto& run : g_runs) {
        if (run.verdict != Verdict::Spreading) continue;
        // r0_free_series throws on any decrease beyond 1e-8
        auto series = r0_free_series(run.trajectory, run.spec, opts);
        for (std::size_t i = 1; i < series.size(); ++i)
            require(series[i].second > series[i - 1].second - 1e-8,
                    fmt("%s: R0F not increasing at t=%.2f", run.name.c_str(),
                        series[i].first));
        ++series_checked;
    }
    require(series_checked >= 3, "too few spreading runs in the suite");
    return fmt("%d spreading-run series strictly increasing", series_checked);
}

// ---------------------------------------------------------------- criterion 8
std::string criterion_invariants() {
    require(!g_runs.empty(), "no suite runs collected");
    for (const auto& run : g_runs) {
        const auto& d = run.trajectory.diagnostics;
        require(d.min_value >= -1e-8,
                fmt("%s: I dipped to %.3e", run.name.c_str(), d.min_value));
        require(d.max_overshoot <= 1e-8,
                fmt("%s: I exceeded N* by %.3e", run.name.c_str(), d.max_overshoot));
        require(d.front_monotonicity_violations == 0,
                fmt("%s: %d front monotonicity violations", run.name.c_str(),
                    d.front_monotonicity_violations));
    }
    return fmt("%zu runs: 0 <= I <= N* within 1e-8 and strictly monotone fronts",
               g_runs.size());
}

// ---------------------------------------------------------------- criterion 9
std::string criterion_threshold() {
    ModelSpec spec = reference_model(1.5, 6.0);
    ThresholdOptions opts;
    opts.run.dt = 2e-3;
    opts.run.n = 256;
    opts.run.t_end = 40.0;
    opts.run.output_stride = 250;
    opts.spectral = suite_spectral();
    opts.width_goal = 0.25;
    opts.horizon_cap = 320.0;
    opts.workers = 2;

    auto result = find_mu_star(spec, {1.0, 6.0}, opts);
    require(!result.immediate_zero, "unexpected mu* = 0 shortcut");
    require(result.mu_hi - result.mu_lo <= 0.25,
            fmt("enclosure width %.4f > 0.25", result.mu_hi - result.mu_lo));
    require(result.mu_lo > 1.0 - 1e-12 && result.mu_hi < 6.0 + 1e-12,
            "enclosure left the bracket");

    bool lo_ok = false, hi_ok = false;
    for (const auto& probe : result.probes) {
        if (probe.mu == result.mu_lo && probe.verdict == Verdict::Vanishing) lo_ok = true;
        if (probe.mu == result.mu_hi && probe.verdict == Verdict::Spreading) hi_ok = true;
    }
    require(lo_ok, "low end of the enclosure lacks a Vanishing probe");
    require(hi_ok, "high end of the enclosure lacks a Spreading probe");

    // monotone predicate sanity: no Vanishing probe above any Spreading probe
    double max_vanishing = 0.0, min_spreading = 1e300;
    for (const auto& probe : result.probes) {
        if (probe.verdict == Verdict::Vanishing)
            max_vanishing = std::max(max_vanishing, probe.mu);
        if (probe.verdict == Verdict::Spreading)
            min_spreading = std::min(min_spreading, probe.mu);
    }
    require(max_vanishing < min_spreading,
            fmt("verdicts flipped: Vanishing at mu=%.4f above Spreading at mu=%.4f",
                max_vanishing, min_spreading));
    return fmt("mu* in [%.4f, %.4f], width %.4f, %zu probes", result.mu_lo,
               result.mu_hi, result.mu_hi - result.mu_lo, result.probes.size());
}

// --------------------------------------------------------------- criterion 10
std::string criterion_attractor() {
    const SuiteRun* speed_run = nullptr;
    for (const auto& run : g_runs)
        if (run.name.rfind("speed-match", 0) == 0) speed_run = &run;
    require(speed_run != nullptr, "criterion 5 run unavailable");

    auto equilibrium = solve_equilibrium(speed_run->spec, 25.0, 999);
    auto report = verify_attractor(speed_run->trajectory, equilibrium, 5.0);
    require(report.max_error < 1e-2,
            fmt("max |I - a/b| on [-5,5] is %.3e >= 1e-2", report.max_error));
    return fmt("max |I - a/b| on [-5,5] over the final window: %.3e", report.max_error);
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<std::string()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form R0 oracle", 1.0, criterion_closed_form_r0},
        {2, "sign relation ladder", 10.0, criterion_sign_relation},
        {3, "spreading example reproduction (mu=6, alpha=+-1.5)", 120.0,
         criterion_example_71},
        {4, "vanishing example reproduction (mu=1, alpha=+-1.5)", 120.0,
         criterion_example_72},
        {5, "spreading-speed match vs semi-waves", 600.0, criterion_speed_match},
        {6, "mu-monotonicity property suite", 300.0, criterion_mu_monotonicity},
        {7, "R0F(t) monotonicity on spreading runs", 600.0, criterion_r0f_monotonicity},
        {8, "maximum principle and front monotonicity", 60.0, criterion_invariants},
        {9, "threshold enclosure mu* in [1,6]", 1800.0, criterion_threshold},
        {10, "equilibrium attraction", 300.0, criterion_attractor},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool passed = true;
        try {
            detail = criterion.body();
        } catch (const CheckFailure& f) {
            passed = false;
            detail = f.message;
        } catch (const std::exception& e) {
            passed = false;
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (passed && elapsed > criterion.budget_seconds) {
            passed = false;
            detail = fmt("over runtime budget: %.1f s > %.0f s", elapsed,
                         criterion.budget_seconds);
        }
        std::printf("[%s] criterion %2d: %s (%s; %.2f s)\n", passed ? "PASS" : "FAIL",
                    criterion.id, criterion.name, detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!passed) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
