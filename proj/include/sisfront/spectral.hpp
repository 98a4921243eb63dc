#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sisfront/model.hpp"
#include "sisfront/solver.hpp"

namespace sisfront {

struct Interval {
    double left = 0.0;
    double right = 0.0;
    double length() const { return right - left; }
};

struct SpectralOptions {
    int n = 800;               ///< interior nodes on the coarse grid; the fine grid uses 2n+1
    double target_dx = 0.0;    ///< if > 0, pick n from the interval length instead (clamped)
    int n_min = 200;           ///< clamp bounds for target_dx-derived n
    int n_max = 4000;
    double eig_rel_tol = 1e-12;  ///< Sturm bisection tolerance for lambda0
    double r0_rel_tol = 1e-10;   ///< eigenvalue tolerance for R0
    bool richardson = true;      ///< extrapolate over the (n, 2n+1) grid pair
};

/// Eigenvalue (or reproduction number) together with node samples of the
/// associated positive eigenfunction, sup-normalized. `x` includes the
/// interval endpoints where psi = 0.
struct EigenPair {
    double value = 0.0;
    std::vector<double> x;
    std::vector<double> psi;
};

/// Principal eigenvalue and reproduction number of one interval.
struct SpectralResult {
    Interval interval;
    double lambda0 = 0.0;
    double r0 = 0.0;
    std::vector<double> x;    ///< fine-grid nodes incl. endpoints
    std::vector<double> psi;  ///< eigenfunction of the lambda0 problem, ||psi||_inf = 1
};

/// Principal (smallest) eigenvalue lambda0 of
///   -d_I psi_xx + alpha psi_x = (beta - gamma) psi + lambda psi,  psi = 0 at ends,
/// solved through the symmetrization psi = e^{alpha x/(2 d_I)} phi, which turns
/// the operator into -d_I phi'' + (alpha^2/(4 d_I) + gamma - beta) phi. The
/// smallest eigenvalue comes from Sturm-count bisection, the eigenfunction
/// from inverse iteration, and the value is Richardson-extrapolated over two
/// grids. The returned psi is in the original (advective) frame.
EigenPair principal_eigenvalue(Interval interval, const ModelSpec& spec,
                               const SpectralOptions& opts = {});

/// Basic reproduction number R0^DA of the interval: the largest L with
///   beta phi = L ( -d_I phi'' + (alpha^2/(4 d_I) + gamma) phi ).
/// The discretized pencil is similarity-transformed to a single symmetric
/// tridiagonal matrix whose smallest eigenvalue 1/L is certified by Sturm
/// bisection; the eigenvector comes from shifted inverse iteration. The
/// returned psi is the variational maximizer (symmetrized frame).
EigenPair r0_dirichlet_advection(Interval interval, const ModelSpec& spec,
                                 const SpectralOptions& opts = {});

/// Both quantities plus a sign-relation check: sign(1 - R0) must match
/// sign(lambda0) whenever |1 - R0| > 1e-8; a mismatch throws NumericError.
SpectralResult spectral_result(Interval interval, const ModelSpec& spec,
                               const SpectralOptions& opts = {});

/// Evaluates the variational quotient
///   int beta psi^2 / int (d_I psi_x^2 + (alpha^2/(4 d_I) + gamma) psi^2)
/// by trapezoid quadrature on the sampled eigenfunction; used to cross-check
/// a computed R0.
double r0_rayleigh_quotient(const ModelSpec& spec, const EigenPair& pair);

/// R0^F(t) series: R0^DA evaluated on each recorded snapshot interval of a
/// trajectory. The series must be strictly increasing; a decrease beyond
/// 1e-8 throws NumericError naming the offending time.
std::vector<std::pair<double, double>> r0_free_series(const Trajectory& trajectory,
                                                      const ModelSpec& spec,
                                                      const SpectralOptions& opts = {});

struct ProbeRow {
    std::string parameter;  ///< which ladder this row belongs to
    double value;           ///< ladder coordinate
    double r0;
};

struct PropertyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct MonotonicityReport {
    std::vector<ProbeRow> rows;
    std::vector<PropertyCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Samples R0^DA over ladders in |alpha|, d_I, and nested intervals and
/// checks the expected monotonicities: decreasing in |alpha|, increasing in
/// the interval, decaying at large d_I (and at small d_I when alpha != 0),
/// and the far-field floor beta_inf/(alpha^2/(4 d_I) + gamma_inf) within 5%
/// at half-width 50.
MonotonicityReport r0_properties_probe(const ModelSpec& spec, Interval interval,
                                       const SpectralOptions& opts = {});

struct ThresholdDiffusionOptions {
    double d_min = 1e-6;
    double d_max = 1e6;
    double rel_tol = 1e-9;
    SpectralOptions spectral;
};

/// Threshold diffusion rate d_I* with R0^D > 1 below and R0^D < 1 above it
/// (advection-free problem; alpha is ignored). Returns 0 when every site in
/// the interval is low-risk (beta <= gamma) and R0^D stays below 1 down to
/// d_min. Throws NumericError when R0^D(d_max) > 1 (bracket too small).
double threshold_diffusion(const ModelSpec& spec, Interval interval,
                           const ThresholdDiffusionOptions& opts = {});

}  // namespace sisfront
