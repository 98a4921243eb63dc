#pragma once

#include <string>
#include <vector>

#include "sisfront/expression.hpp"

namespace sisfront {

/// All model parameters and coefficient functions for the moving-front
/// SIS problem
///
///   I_t - d_I I_xx + alpha I_x = (beta(x) - gamma(x)) I - (beta(x)/N*) I^2
///
/// on g(t) < x < h(t), with I = 0 and the Stefan conditions
/// g' = -mu I_x(g), h' = -mu I_x(h) at the fronts.
///
/// Immutable after validation; all accessors are pure and safe to share
/// across threads.
struct ModelSpec {
    double d_I = 0.0;     ///< diffusion rate of the infected class (> 0)
    double alpha = 0.0;   ///< advection rate; sign is the drift direction
    double mu = 0.0;      ///< expanding capability in the Stefan condition (> 0)
    double n_star = 0.0;  ///< constant total population density N* (> 0)
    double h0 = 0.0;      ///< initial half-width (> 0)

    Expression beta;   ///< transmission rate beta(x) > 0
    Expression gamma;  ///< recovery rate gamma(x) > 0
    Expression i0;     ///< initial profile I0(x) on [-h0, h0]

    double beta_inf = 0.0;   ///< limit of beta at +-infinity
    double gamma_inf = 0.0;  ///< limit of gamma at +-infinity

    /// Far-field net growth rate a = beta_inf - gamma_inf.
    double a() const { return beta_inf - gamma_inf; }
    /// Far-field saturation coefficient b = beta_inf / N*.
    double b() const { return beta_inf / n_star; }
    /// Far-field equilibrium level a/b = N*(beta_inf - gamma_inf)/beta_inf.
    double equilibrium_level() const { return a() / b(); }
};

struct BulkRates {
    double a;         ///< beta_inf - gamma_inf
    double b;         ///< beta_inf / N*
    double c_fisher;  ///< 2 sqrt(a d_I), minimal Cauchy traveling-wave speed
};

/// Checks every spec invariant and returns one human-readable message per
/// violation; an empty list means the spec is valid. Positivity of the
/// coefficient functions is probed on a fixed sampling grid; the declared
/// far-field limits are cross-checked against samples at |x| = 1e3 with
/// tolerance 1e-2.
std::vector<std::string> validate(const ModelSpec& spec);

/// Throws ValidationError (joining all messages) if validate() is nonempty.
void require_valid(const ModelSpec& spec);

/// Far-field rates (a, b) and the Fisher speed 2 sqrt(a d_I).
/// Throws ValidationError when a <= 0.
BulkRates bulk_rates(const ModelSpec& spec);

/// Velocity bound C1 = 2 M N* mu with
/// M = max{ |alpha|/d_I + sqrt(max beta / (2 d_I)), 4 ||I0||_C1 / (3 N*) },
/// the a-priori front-speed bound; max beta and ||I0||_C1 are measured on
/// [-h0, h0] by dense sampling.
double front_velocity_bound(const ModelSpec& spec);

}  // namespace sisfront
