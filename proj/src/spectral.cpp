#include "sisfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sisfront/tridiag.hpp"

namespace sisfront {

namespace {

void check_interval(Interval iv) {
    if (!std::isfinite(iv.left) || !std::isfinite(iv.right) || !(iv.length() > 0.0))
        throw NumericError("spectral solve on a degenerate interval");
}

int effective_n(Interval iv, const SpectralOptions& opts) {
    if (opts.target_dx > 0.0) {
        const double cells = iv.length() / opts.target_dx;
        if (cells < 4.0)
            throw NumericError("interval shorter than 4 grid cells: length " +
                               std::to_string(iv.length()));
        int n = static_cast<int>(std::lround(cells)) - 1;
        return std::clamp(n, opts.n_min, opts.n_max);
    }
    return std::max(opts.n, 16);
}

/// Symmetrized operator -d_I phi'' + (alpha^2/(4 d_I) + gamma - w*beta) phi on
/// the interval with n interior nodes; w = 1 for the eigenvalue problem,
/// w = 0 for the positive-definite side of the R0 pencil.
SymTridiag assemble(Interval iv, const ModelSpec& spec, int n, bool subtract_beta,
                    std::vector<double>* beta_out) {
    const double dx = iv.length() / (n + 1);
    const double d = spec.d_I;
    const double advection_shift = spec.alpha * spec.alpha / (4.0 * d);

    SymTridiag t;
    t.diag.resize(n);
    t.offdiag.assign(n - 1, -d / (dx * dx));
    if (beta_out) beta_out->resize(n);
    for (int j = 0; j < n; ++j) {
        const double x = iv.left + (j + 1) * dx;
        const double beta = spec.beta.eval(x);
        const double gamma = spec.gamma.eval(x);
        t.diag[j] = 2.0 * d / (dx * dx) + advection_shift + gamma -
                    (subtract_beta ? beta : 0.0);
        if (beta_out) (*beta_out)[j] = beta;
    }
    return t;
}

std::vector<double> nodes_with_endpoints(Interval iv, int n) {
    const double dx = iv.length() / (n + 1);
    std::vector<double> x(n + 2);
    for (int k = 0; k <= n + 1; ++k) x[k] = iv.left + k * dx;
    x.back() = iv.right;
    return x;
}

/// Pads interior samples with the zero Dirichlet endpoints and
/// sup-normalizes.
std::vector<double> pad_and_normalize(const std::vector<double>& interior) {
    std::vector<double> out(interior.size() + 2, 0.0);
    double vmax = 0.0;
    for (double v : interior) vmax = std::max(vmax, std::abs(v));
    for (std::size_t j = 0; j < interior.size(); ++j) out[j + 1] = interior[j] / vmax;
    return out;
}

}  // namespace

EigenPair principal_eigenvalue(Interval iv, const ModelSpec& spec,
                               const SpectralOptions& opts) {
    check_interval(iv);
    const int n = effective_n(iv, opts);

    auto solve = [&](int nn) {
        SymTridiag t = assemble(iv, spec, nn, /*subtract_beta=*/true, nullptr);
        return std::pair{t, smallest_eigenvalue(t, opts.eig_rel_tol)};
    };

    auto [t_fine, lambda_fine] = solve(opts.richardson ? 2 * n + 1 : n);
    double lambda = lambda_fine;
    if (opts.richardson) {
        auto [t_coarse, lambda_coarse] = solve(n);
        (void)t_coarse;
        lambda = (4.0 * lambda_fine - lambda_coarse) / 3.0;
    }

    std::vector<double> phi = inverse_iteration(t_fine, lambda_fine);

    // back to the advective frame: psi = e^{alpha x/(2 d_I)} phi, computed in
    // log space so strong drifts cannot overflow before normalization
    const int nf = t_fine.size();
    const double dx = iv.length() / (nf + 1);
    const double rate = spec.alpha / (2.0 * spec.d_I);
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> log_mag(nf);
    for (int j = 0; j < nf; ++j) {
        const double x = iv.left + (j + 1) * dx;
        log_mag[j] = rate * x + std::log(std::max(std::abs(phi[j]), 1e-300));
        top = std::max(top, log_mag[j]);
    }
    EigenPair pair;
    pair.value = lambda;
    pair.x = nodes_with_endpoints(iv, nf);
    pair.psi.assign(nf + 2, 0.0);
    for (int j = 0; j < nf; ++j)
        pair.psi[j + 1] = std::copysign(std::exp(log_mag[j] - top), phi[j]);

    for (int j = 1; j <= nf; ++j)
        if (!(pair.psi[j] > 0.0))
            throw NumericError("principal eigenfunction lost interior positivity");
    return pair;
}

EigenPair r0_dirichlet_advection(Interval iv, const ModelSpec& spec,
                                 const SpectralOptions& opts) {
    check_interval(iv);
    const int n = effective_n(iv, opts);

    auto solve = [&](int nn) {
        std::vector<double> beta;
        SymTridiag a = assemble(iv, spec, nn, /*subtract_beta=*/false, &beta);
        return largest_pencil_eigenvalue_sturm(a, beta, opts.r0_rel_tol);
    };

    PencilResult fine = solve(opts.richardson ? 2 * n + 1 : n);
    double r0 = fine.value;
    if (opts.richardson) {
        PencilResult coarse = solve(n);
        r0 = (4.0 * fine.value - coarse.value) / 3.0;
    }

    EigenPair pair;
    pair.value = r0;
    pair.x = nodes_with_endpoints(iv, static_cast<int>(fine.vector.size()));
    pair.psi = pad_and_normalize(fine.vector);
    for (std::size_t j = 1; j + 1 < pair.psi.size(); ++j)
        if (!(pair.psi[j] > 0.0))
            throw NumericError("R0 eigenfunction lost interior positivity");
    return pair;
}

SpectralResult spectral_result(Interval iv, const ModelSpec& spec,
                               const SpectralOptions& opts) {
    EigenPair eig = principal_eigenvalue(iv, spec, opts);
    EigenPair r0 = r0_dirichlet_advection(iv, spec, opts);

    if ((1.0 - r0.value) * eig.value < -1e-8) {
        std::ostringstream os;
        os << "sign relation violated on (" << iv.left << ", " << iv.right
           << "): R0 = " << r0.value << ", lambda0 = " << eig.value;
        throw NumericError(os.str());
    }

    SpectralResult result;
    result.interval = iv;
    result.lambda0 = eig.value;
    result.r0 = r0.value;
    result.x = std::move(eig.x);
    result.psi = std::move(eig.psi);
    return result;
}

double r0_rayleigh_quotient(const ModelSpec& spec, const EigenPair& pair) {
    const std::size_t m = pair.psi.size();
    if (m < 3 || pair.x.size() != m)
        throw NumericError("rayleigh quotient needs sampled eigenfunction with endpoints");
    const double dx = pair.x[1] - pair.x[0];
    const double shift = spec.alpha * spec.alpha / (4.0 * spec.d_I);

    double num = 0.0, den = 0.0;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double x = pair.x[j];
        const double p2 = pair.psi[j] * pair.psi[j];
        num += spec.beta.eval(x) * p2 * dx;
        den += (shift + spec.gamma.eval(x)) * p2 * dx;
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double dpsi = pair.psi[k + 1] - pair.psi[k];
        den += spec.d_I * dpsi * dpsi / dx;
    }
    return num / den;
}

std::vector<std::pair<double, double>> r0_free_series(const Trajectory& trajectory,
                                                      const ModelSpec& spec,
                                                      const SpectralOptions& opts) {
    if (trajectory.snapshots.empty())
        throw NumericError("r0_free_series needs a nonempty trajectory");

    std::vector<std::pair<double, double>> series;
    series.reserve(trajectory.snapshots.size());
    for (const auto& snap : trajectory.snapshots) {
        EigenPair r = r0_dirichlet_advection({snap.front.g, snap.front.h}, spec, opts);
        if (!series.empty() && r.value <= series.back().second - 1e-8) {
            std::ostringstream os;
            os << "R0^F(t) monotonicity violated at t = " << snap.front.t << ": "
               << series.back().second << " -> " << r.value;
            throw NumericError(os.str());
        }
        series.emplace_back(snap.front.t, r.value);
    }
    return series;
}

MonotonicityReport r0_properties_probe(const ModelSpec& spec, Interval iv,
                                       const SpectralOptions& opts) {
    MonotonicityReport report;

    auto r0_at = [&](const ModelSpec& s, Interval i, const SpectralOptions& o) {
        return r0_dirichlet_advection(i, s, o).value;
    };

    // |alpha| ladder, fixed interval
    {
        std::vector<double> values;
        for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
            ModelSpec s = spec;
            s.alpha = alpha;
            double r = r0_at(s, iv, opts);
            report.rows.push_back({"alpha", alpha, r});
            values.push_back(r);
        }
        bool ok = true;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[i - 1] + 1e-10) ok = false;
        report.checks.push_back({"R0 non-increasing in |alpha|", ok, ""});
    }

    // nested intervals about the same center
    {
        const double center = 0.5 * (iv.left + iv.right);
        const double half = 0.5 * iv.length();
        std::vector<double> values;
        for (double scale : {1.0, 2.0, 4.0}) {
            Interval wide{center - scale * half, center + scale * half};
            double r = r0_at(spec, wide, opts);
            report.rows.push_back({"interval_halfwidth", scale * half, r});
            values.push_back(r);
        }
        bool ok = values[0] < values[1] && values[1] < values[2];
        report.checks.push_back({"R0 strictly increasing in the interval", ok, ""});
    }

    // large diffusion: decay toward 0
    {
        std::vector<double> values;
        for (double f : {1.0, 4.0, 16.0, 64.0}) {
            ModelSpec s = spec;
            s.d_I = spec.d_I * f;
            double r = r0_at(s, iv, opts);
            report.rows.push_back({"d_I", s.d_I, r});
            values.push_back(r);
        }
        bool ok = true;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] < values[i - 1])) ok = false;
        if (!(values.back() < 0.25 * values.front())) ok = false;
        report.checks.push_back({"R0 decays at large d_I", ok, ""});
    }

    // small diffusion with advection: decay toward 0 as d_I -> 0
    if (spec.alpha != 0.0) {
        std::vector<double> values;
        for (double f : {1e-3, 1e-2, 1e-1}) {
            ModelSpec s = spec;
            s.d_I = spec.d_I * f;
            double r = r0_at(s, iv, opts);
            report.rows.push_back({"d_I_small", s.d_I, r});
            values.push_back(r);
        }
        bool ok = values[0] < values[1] && values[1] < values[2];
        report.checks.push_back({"R0 decays at small d_I (alpha != 0)", ok, ""});
    } else {
        report.checks.push_back(
            {"R0 decays at small d_I (alpha != 0)", true, "skipped: alpha = 0"});
    }

    // far-field floor at half-width 50
    {
        SpectralOptions wide_opts = opts;
        wide_opts.n = std::max(opts.n, 2000);
        double r = r0_at(spec, {-50.0, 50.0}, wide_opts);
        const double floor = spec.beta_inf /
                             (spec.alpha * spec.alpha / (4.0 * spec.d_I) + spec.gamma_inf);
        report.rows.push_back({"farfield_halfwidth", 50.0, r});
        bool ok = r >= 0.95 * floor;
        std::ostringstream os;
        os << "R0(-50,50) = " << r << " vs floor " << floor;
        report.checks.push_back({"far-field floor within 5%", ok, os.str()});
    }

    return report;
}

double threshold_diffusion(const ModelSpec& spec, Interval iv,
                           const ThresholdDiffusionOptions& opts) {
    check_interval(iv);

    ModelSpec base = spec;
    base.alpha = 0.0;  // d_I* is defined for the advection-free R0^D

    auto r0_at = [&](double d) {
        ModelSpec s = base;
        s.d_I = d;
        return r0_dirichlet_advection(iv, s, opts.spectral).value;
    };

    bool sitewise_low_risk = true;
    const int m = 1001;
    for (int i = 0; i < m; ++i) {
        const double x = iv.left + iv.length() * i / (m - 1);
        if (spec.beta.eval(x) > spec.gamma.eval(x) + 1e-14) {
            sitewise_low_risk = false;
            break;
        }
    }

    double lo = opts.d_min;
    double r_lo = r0_at(lo);
    if (r_lo < 1.0) {
        if (sitewise_low_risk) return 0.0;
        throw NumericError("threshold_diffusion: R0 < 1 already at d_I = " +
                           std::to_string(lo) +
                           " although high-risk sites exist; threshold below probe floor");
    }
    double hi = opts.d_max;
    if (r0_at(hi) > 1.0)
        throw NumericError("threshold_diffusion: R0 > 1 at the bracket top d_I = " +
                           std::to_string(hi) + "; widen the bracket");

    while (hi - lo > opts.rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (r0_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace sisfront
