#include "sisfront/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sisfront {

const char* to_string(Direction d) {
    return d == Direction::Rightward ? "rightward" : "leftward";
}

namespace {

struct State {
    double q;
    double p;
};

/// Dormand-Prince 5(4) step: returns the 5th-order result and an embedded
/// error estimate.
template <typename F>
State dp45_step(const F& f, const State& y, double h, double& error) {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto axpy = [](const State& y0, double hh, double cq, double cp) {
        return State{y0.q + hh * cq, y0.p + hh * cp};
    };

    State k1 = f(y);
    State k2 = f(axpy(y, h, a21 * k1.q, a21 * k1.p));
    State k3 = f(axpy(y, h, a31 * k1.q + a32 * k2.q, a31 * k1.p + a32 * k2.p));
    State k4 = f(axpy(y, h, a41 * k1.q + a42 * k2.q + a43 * k3.q,
                      a41 * k1.p + a42 * k2.p + a43 * k3.p));
    State k5 = f(axpy(y, h, a51 * k1.q + a52 * k2.q + a53 * k3.q + a54 * k4.q,
                      a51 * k1.p + a52 * k2.p + a53 * k3.p + a54 * k4.p));
    State k6 = f(axpy(y, h, a61 * k1.q + a62 * k2.q + a63 * k3.q + a64 * k4.q + a65 * k5.q,
                      a61 * k1.p + a62 * k2.p + a63 * k3.p + a64 * k4.p + a65 * k5.p));

    State y5{y.q + h * (b1 * k1.q + b3 * k3.q + b4 * k4.q + b5 * k5.q + b6 * k6.q),
             y.p + h * (b1 * k1.p + b3 * k3.p + b4 * k4.p + b5 * k5.p + b6 * k6.p)};
    State k7 = f(y5);

    const double err_q =
        h * (e1 * k1.q + e3 * k3.q + e4 * k4.q + e5 * k5.q + e6 * k6.q + e7 * k7.q);
    const double err_p =
        h * (e1 * k1.p + e3 * k3.p + e4 * k4.p + e5 * k5.p + e6 * k6.p + e7 * k7.p);
    error = std::max(std::abs(err_q), std::abs(err_p));
    return y5;
}

/// Root of the cubic Hermite interpolant of q on [0, h] between (q0, q0')
/// and (q1, q1'), located by bisection on the unit parameter.
double hermite_crossing(double q0, double dq0, double q1, double dq1, double h) {
    auto q_at = [&](double t) {
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * q0 + (t3 - 2 * t2 + t) * h * dq0 +
               (-2 * t3 + 3 * t2) * q1 + (t3 - t2) * h * dq1;
    };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((q_at(mid) > 0.0) == (q0 > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SlopeResult semiwave_slope(double c_eff, double a, double b, double d_I,
                           const SemiWaveOptions& opts) {
    if (!(a > 0.0) || !(b > 0.0) || !(d_I > 0.0))
        throw ValidationError("semiwave_slope requires a, b, d_I > 0");
    const double fisher = 2.0 * std::sqrt(a * d_I);
    if (!(c_eff < fisher)) {
        std::ostringstream os;
        os << "no semi-wave: effective speed " << c_eff << " >= 2 sqrt(a d_I) = " << fisher;
        throw NumericError(os.str());
    }

    const double q_inf = a / b;

    // phase plane in backward z (tau = -z): the saddle's stable direction
    // becomes unstable; its eigenvector with negative q-component is
    // (-1, -lambda_minus), lambda_minus < 0
    const double lambda_minus =
        (c_eff - std::sqrt(c_eff * c_eff + 4.0 * a * d_I)) / (2.0 * d_I);
    double vq = -1.0, vp = -lambda_minus;
    const double vnorm = std::hypot(vq, vp);
    vq /= vnorm;
    vp /= vnorm;

    auto rhs = [&](const State& s) -> State {
        // backward-z flow of q' = p, p' = (c_eff p - q(a - b q))/d_I
        return {-s.p, -(c_eff * s.p - s.q * (a - b * s.q)) / d_I};
    };

    State y{q_inf + opts.manifold_offset * vq, opts.manifold_offset * vp};

    std::vector<std::pair<double, double>> reversed;  // (tau, q)
    reversed.emplace_back(0.0, y.q);

    const double tol = opts.ode_tol;
    double tau = 0.0;
    double h = 1e-4;
    const double tau_max = 1e4 / std::sqrt(a / d_I) + 1e3;  // generous escape guard

    while (y.q > 0.0) {
        if (tau > tau_max)
            throw NumericError("semi-wave integration failed to reach q = 0");
        double error = 0.0;
        State y_new = dp45_step(rhs, y, h, error);
        const double scale = tol * (1.0 + std::max(std::abs(y.q), std::abs(y.p)));
        if (error > scale) {
            h *= std::max(0.2, 0.9 * std::pow(scale / error, 0.2));
            if (h < 1e-14)
                throw NumericError("semi-wave integrator step size underflowed");
            continue;
        }
        if (y_new.q <= 0.0) {
            // event: interpolate the q = 0 crossing inside this step
            State f0 = rhs(y), f1 = rhs(y_new);
            const double theta = hermite_crossing(y.q, f0.q, y_new.q, f1.q, h);
            const double t2 = theta * theta, t3 = t2 * theta;
            const double p_cross = (2 * t3 - 3 * t2 + 1) * y.p + (t3 - 2 * t2 + theta) * h * f0.p +
                                   (-2 * t3 + 3 * t2) * y_new.p + (t3 - t2) * h * f1.p;
            tau += theta * h;
            reversed.emplace_back(tau, 0.0);
            y.p = p_cross;
            break;
        }
        tau += h;
        y = y_new;
        reversed.emplace_back(tau, y.q);
        if (error > 0.0) h = std::min(h * std::min(5.0, 0.9 * std::pow(scale / error, 0.2)), 1.0);
    }

    if (!(y.p > 0.0))
        throw NumericError("semi-wave slope came out non-positive; integration failed");

    // profile in forward z, shifted so q(0) = 0
    SlopeResult result;
    result.slope0 = y.p;
    result.profile.reserve(reversed.size());
    const double z_total = reversed.back().first;
    for (auto it = reversed.rbegin(); it != reversed.rend(); ++it)
        result.profile.emplace_back(z_total - it->first, it->second);
    return result;
}

SemiWaveResult semiwave_speed(Direction direction, const ModelSpec& spec,
                              const SemiWaveOptions& opts) {
    const BulkRates rates = bulk_rates(spec);
    const double signed_alpha =
        direction == Direction::Rightward ? spec.alpha : -spec.alpha;
    const double k_max = rates.c_fisher + signed_alpha;
    if (!(k_max > 2.0 * opts.bracket_margin))
        throw NumericError("semi-wave speed bracket is empty; advection too strong");

    auto c_eff = [&](double k) { return k - signed_alpha; };
    auto residual = [&](double k) {
        return spec.mu * semiwave_slope(c_eff(k), rates.a, rates.b, spec.d_I, opts).slope0 - k;
    };

    double lo = opts.bracket_margin;
    const double r_lo = residual(lo);
    if (!(r_lo > 0.0)) {
        std::ostringstream os;
        os << "semi-wave bracket sign test failed for " << to_string(direction)
           << ": residual(" << lo << ") = " << r_lo;
        throw NumericError(os.str());
    }

    // The slope vanishes super-exponentially as c_eff approaches the Fisher
    // speed, so the orbit near the bound underflows before crossing q = 0.
    // Probe the upper endpoint at a resolvable stand-off instead; the
    // residual is strictly decreasing, so any endpoint with residual < 0
    // encloses the unique root.
    double hi = 0.0;
    bool hi_found = false;
    for (double gap = std::max(opts.bracket_margin, 1e-3 * k_max);
         gap >= 1e-4 * k_max; gap *= 0.1) {
        hi = k_max - gap;
        if (residual(hi) < 0.0) {
            hi_found = true;
            break;
        }
    }
    if (!hi_found) {
        std::ostringstream os;
        os << "semi-wave bracket sign test failed for " << to_string(direction)
           << ": residual stays positive within 1e-4 of the existence bound "
           << k_max << " (mu too large to resolve the matching root)";
        throw NumericError(os.str());
    }

    while (hi - lo > opts.root_rel_tol * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (residual(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    const double k_star = 0.5 * (lo + hi);
    SlopeResult final = semiwave_slope(c_eff(k_star), rates.a, rates.b, spec.d_I, opts);
    return {direction, k_star, final.slope0, std::move(final.profile)};
}

}  // namespace sisfront
