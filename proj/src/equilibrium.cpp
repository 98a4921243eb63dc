#include "sisfront/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisfront/tridiag.hpp"

namespace sisfront {

double EquilibriumProfile::at(double xq) const {
    if (xq <= x.front()) return istar.front();
    if (xq >= x.back()) return istar.back();
    const double dx = x[1] - x[0];
    const int m = static_cast<int>(x.size());
    int cell = std::clamp(static_cast<int>((xq - x.front()) / dx), 0, m - 2);
    auto slope = [&](int k) {
        const int km = std::max(k - 1, 0), kp = std::min(k + 1, m - 1);
        return (istar[kp] - istar[km]) / (x[kp] - x[km]);
    };
    const double t = (xq - x[cell]) / dx;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * istar[cell] + (t3 - 2 * t2 + t) * dx * slope(cell) +
           (-2 * t3 + 3 * t2) * istar[cell + 1] + (t3 - t2) * dx * slope(cell + 1);
}

namespace {

struct Workspace {
    std::vector<double> beta, gamma, residual, delta, lower, diag, upper, scratch, trial;
};

double residual_norm(const ModelSpec& spec, const Workspace& w, const std::vector<double>& u,
                     double boundary, double dx, std::vector<double>* out) {
    const int n = static_cast<int>(u.size());
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 0.5 / dx;
    double norm = 0.0;
    for (int j = 0; j < n; ++j) {
        const double um = (j > 0) ? u[j - 1] : boundary;
        const double up = (j + 1 < n) ? u[j + 1] : boundary;
        const double f = -spec.d_I * (um - 2.0 * u[j] + up) * inv_dx2 +
                         spec.alpha * (up - um) * inv_2dx -
                         (w.beta[j] - w.gamma[j]) * u[j] +
                         (w.beta[j] / spec.n_star) * u[j] * u[j];
        if (out) (*out)[j] = f;
        norm = std::max(norm, std::abs(f));
    }
    return norm;
}

std::vector<double> newton_solve(const ModelSpec& spec, Workspace& w, double guess,
                                 double boundary, double dx, int n,
                                 const EquilibriumOptions& opts) {
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 0.5 / dx;

    std::vector<double> u(n, guess);
    double norm = residual_norm(spec, w, u, boundary, dx, &w.residual);

    for (int iter = 0; iter < opts.newton_max_iter; ++iter) {
        if (norm <= opts.newton_tol) return u;

        for (int j = 0; j < n; ++j) {
            w.diag[j] = 2.0 * spec.d_I * inv_dx2 - (w.beta[j] - w.gamma[j]) +
                        2.0 * (w.beta[j] / spec.n_star) * u[j];
            if (j > 0) w.lower[j - 1] = -spec.d_I * inv_dx2 - spec.alpha * inv_2dx;
            if (j + 1 < n) w.upper[j] = -spec.d_I * inv_dx2 + spec.alpha * inv_2dx;
        }
        for (int j = 0; j < n; ++j) w.residual[j] = -w.residual[j];
        thomas_solve_into(w.lower, w.diag, w.upper, w.residual, w.delta, w.scratch);

        double step_scale = 1.0;
        bool accepted = false;
        for (int back = 0; back < 10; ++back) {
            for (int j = 0; j < n; ++j) w.trial[j] = u[j] + step_scale * w.delta[j];
            double try_norm = residual_norm(spec, w, w.trial, boundary, dx, &w.residual);
            if (try_norm < norm || try_norm <= opts.newton_tol) {
                u.swap(w.trial);
                norm = try_norm;
                accepted = true;
                break;
            }
            step_scale *= 0.5;
        }
        if (!accepted) {
            std::ostringstream os;
            os << "equilibrium Newton stalled at iteration " << iter << " with residual "
               << norm;
            throw NumericError(os.str());
        }
    }
    if (norm <= opts.newton_tol) return u;
    std::ostringstream os;
    os << "equilibrium Newton did not converge (residual " << norm << ")";
    throw NumericError(os.str());
}

}  // namespace

EquilibriumProfile solve_equilibrium(const ModelSpec& spec, double L, int n,
                                     const EquilibriumOptions& opts) {
    if (!(L >= 20.0)) throw ValidationError("equilibrium truncation requires L >= 20");
    if (n < 16) throw ValidationError("equilibrium grid needs at least 16 interior nodes");
    const BulkRates rates = bulk_rates(spec);
    const double level = rates.a / rates.b;

    const double dx = 2.0 * L / (n + 1);
    Workspace w;
    w.beta.resize(n);
    w.gamma.resize(n);
    w.residual.resize(n);
    w.delta.resize(n);
    w.lower.resize(n - 1);
    w.diag.resize(n);
    w.upper.resize(n - 1);
    w.scratch.resize(2 * n);
    w.trial.resize(n);
    for (int j = 0; j < n; ++j) {
        const double x = -L + (j + 1) * dx;
        w.beta[j] = spec.beta.eval(x);
        w.gamma[j] = spec.gamma.eval(x);
    }

    std::vector<double> from_level = newton_solve(spec, w, level, level, dx, n, opts);
    std::vector<double> from_nstar = newton_solve(spec, w, spec.n_star, level, dx, n, opts);

    double disagreement = 0.0;
    for (int j = 0; j < n; ++j)
        disagreement = std::max(disagreement, std::abs(from_level[j] - from_nstar[j]));
    if (disagreement > opts.agreement_tol) {
        std::ostringstream os;
        os << "equilibrium solves from the two bracketing guesses disagree by "
           << disagreement << "; truncation L = " << L << " is too small";
        throw NumericError(os.str());
    }

    for (int j = 0; j < n; ++j) {
        if (!(from_level[j] > 0.0))
            throw NumericError("equilibrium lost positivity at x = " +
                               std::to_string(-L + (j + 1) * dx));
        if (from_level[j] > spec.n_star * (1.0 + 1e-10))
            throw NumericError("equilibrium exceeded N* at x = " +
                               std::to_string(-L + (j + 1) * dx));
    }

    EquilibriumProfile profile;
    profile.L = L;
    profile.x.resize(n + 2);
    profile.istar.resize(n + 2);
    profile.x[0] = -L;
    profile.istar[0] = level;
    for (int j = 0; j < n; ++j) {
        profile.x[j + 1] = -L + (j + 1) * dx;
        profile.istar[j + 1] = from_level[j];
    }
    profile.x[n + 1] = L;
    profile.istar[n + 1] = level;
    return profile;
}

}  // namespace sisfront
