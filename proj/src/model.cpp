#include "sisfront/model.hpp"

#include <cmath>
#include <sstream>

namespace sisfront {

namespace {

/// Positivity probe grid: uniform on [-100, 100] plus the far-field
/// cross-check points at |x| = 1e3.
constexpr int kProbePoints = 2001;
constexpr double kProbeHalfWidth = 100.0;
constexpr double kFarFieldX = 1.0e3;
constexpr double kFarFieldTol = 1.0e-2;

bool probe_positive(const Expression& f, const std::string& name,
                    std::vector<std::string>& violations) {
    bool ok = true;
    for (int i = 0; i < kProbePoints; ++i) {
        double x = -kProbeHalfWidth + 2.0 * kProbeHalfWidth * i / (kProbePoints - 1);
        double v = f.eval(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << name << " failed to evaluate at x = " << x << " (value " << v << ")";
            violations.push_back(os.str());
            return false;
        }
        if (v <= 0.0) {
            std::ostringstream os;
            os << name << "(x) must be positive; " << name << "(" << x << ") = " << v;
            violations.push_back(os.str());
            ok = false;
        }
    }
    return ok;
}

void check_far_field(const Expression& f, double declared, const std::string& name,
                     std::vector<std::string>& violations) {
    for (double x : {-kFarFieldX, kFarFieldX}) {
        double v = f.eval(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << name << " failed to evaluate at x = " << x;
            violations.push_back(os.str());
            return;
        }
        if (std::abs(v - declared) > kFarFieldTol) {
            std::ostringstream os;
            os << "declared " << name << " limit " << declared << " disagrees with "
               << name << "(" << x << ") = " << v << " (tolerance " << kFarFieldTol << ")";
            violations.push_back(os.str());
            return;
        }
    }
}

}  // namespace

std::vector<std::string> validate(const ModelSpec& spec) {
    std::vector<std::string> violations;
    auto complain = [&](const std::string& msg) { violations.push_back(msg); };

    if (!(spec.d_I > 0.0)) complain("d_I must be positive");
    if (!(spec.mu > 0.0)) complain("mu must be positive");
    if (!(spec.n_star > 0.0)) complain("n_star must be positive");
    if (!(spec.h0 > 0.0)) complain("h0 must be positive");

    bool beta_ok = probe_positive(spec.beta, "beta", violations);
    bool gamma_ok = probe_positive(spec.gamma, "gamma", violations);
    if (beta_ok) check_far_field(spec.beta, spec.beta_inf, "beta", violations);
    if (gamma_ok) check_far_field(spec.gamma, spec.gamma_inf, "gamma", violations);

    double a = spec.a();
    if (!(a > 0.0)) {
        std::ostringstream os;
        os << "assumption (H) fails: beta_inf - gamma_inf = " << a << " must be positive";
        complain(os.str());
    } else if (spec.d_I > 0.0) {
        double c_fisher = 2.0 * std::sqrt(a * spec.d_I);
        if (!(std::abs(spec.alpha) < c_fisher)) {
            std::ostringstream os;
            os << "small advection fails: |alpha| = " << std::abs(spec.alpha)
               << " >= 2*sqrt(a*d_I) = " << c_fisher;
            complain(os.str());
        }
    }

    if (spec.h0 > 0.0) {
        const double boundary_tol = 1e-9 * std::max(spec.n_star, 1.0);
        for (double xb : {-spec.h0, spec.h0}) {
            double v = spec.i0.eval(xb);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "I0 failed to evaluate at x = " << xb;
                complain(os.str());
            } else if (std::abs(v) > boundary_tol) {
                std::ostringstream os;
                os << "I0(" << xb << ") = " << v << " must vanish at the initial fronts";
                complain(os.str());
            }
        }
        // interior positivity and the N* bound
        const int m = 513;
        for (int i = 1; i < m - 1; ++i) {
            double x = -spec.h0 + 2.0 * spec.h0 * i / (m - 1);
            double v = spec.i0.eval(x);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "I0 failed to evaluate at x = " << x;
                complain(os.str());
                break;
            }
            if (v <= 0.0) {
                std::ostringstream os;
                os << "I0(" << x << ") = " << v << " must be positive inside (-h0, h0)";
                complain(os.str());
                break;
            }
            if (spec.n_star > 0.0 && v > spec.n_star * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "I0(" << x << ") = " << v << " exceeds N* = " << spec.n_star;
                complain(os.str());
                break;
            }
        }
    }

    return violations;
}

void require_valid(const ModelSpec& spec) {
    auto violations = validate(spec);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "invalid model spec:";
    for (const auto& v : violations) os << "\n  - " << v;
    throw ValidationError(os.str());
}

BulkRates bulk_rates(const ModelSpec& spec) {
    double a = spec.a();
    if (!(a > 0.0)) {
        std::ostringstream os;
        os << "assumption (H) fails: beta_inf - gamma_inf = " << a << " must be positive";
        throw ValidationError(os.str());
    }
    return {a, spec.b(), 2.0 * std::sqrt(a * spec.d_I)};
}

double front_velocity_bound(const ModelSpec& spec) {
    const int m = 2001;
    double beta_max = 0.0;
    double i0_max = 0.0;
    double i0_slope_max = 0.0;
    const double dx = 2.0 * spec.h0 / (m - 1);
    double prev = spec.i0.eval(-spec.h0);
    for (int i = 0; i < m; ++i) {
        double x = -spec.h0 + dx * i;
        beta_max = std::max(beta_max, spec.beta.eval(x));
        double v = spec.i0.eval(x);
        i0_max = std::max(i0_max, std::abs(v));
        if (i > 0) i0_slope_max = std::max(i0_slope_max, std::abs(v - prev) / dx);
        prev = v;
    }
    double i0_c1 = i0_max + i0_slope_max;
    double m_bound = std::max(std::abs(spec.alpha) / spec.d_I +
                                  std::sqrt(beta_max / (2.0 * spec.d_I)),
                              4.0 * i0_c1 / (3.0 * spec.n_star));
    return 2.0 * m_bound * spec.n_star * spec.mu;
}

}  // namespace sisfront
