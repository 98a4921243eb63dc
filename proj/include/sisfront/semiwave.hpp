#pragma once

#include <utility>
#include <vector>

#include "sisfront/model.hpp"

namespace sisfront {

enum class Direction { Rightward, Leftward };

const char* to_string(Direction d);

struct SemiWaveOptions {
    double manifold_offset = 1e-8;  ///< start distance from the saddle (a/b, 0)
    double ode_tol = 1e-10;         ///< integrator relative/absolute tolerance
    double root_rel_tol = 1e-9;     ///< bisection tolerance on k
    double bracket_margin = 1e-6;   ///< stand-off from the existence bounds
};

/// Semi-wave boundary slope and profile for one effective speed.
struct SlopeResult {
    double slope0;  ///< q'(0) > 0
    std::vector<std::pair<double, double>> profile;  ///< (z, q), q(0) = 0, increasing
};

/// Boundary slope q'(0) of the semi-wave profile
///   d_I q'' - c_eff q' + q (a - b q) = 0,  q(0) = 0,  q(inf) = a/b,
/// obtained by integrating the phase-plane system backward from the unstable
/// manifold of the saddle (a/b, 0) until q crosses zero; the slope at the
/// crossing comes from event interpolation. Requires c_eff < 2 sqrt(a d_I)
/// (no semi-wave exists at or beyond the Fisher speed).
SlopeResult semiwave_slope(double c_eff, double a, double b, double d_I,
                           const SemiWaveOptions& opts = {});

struct SemiWaveResult {
    Direction direction;
    double k_star;   ///< asymptotic front speed
    double slope0;   ///< q'(0); satisfies mu * slope0 = k_star
    std::vector<std::pair<double, double>> profile;
};

/// Unique speed k* with mu q'(0) = k for the requested direction, located by
/// bisection on (0, 2 sqrt(a d_I) +- alpha): the residual mu q'(0; c_eff(k)) - k
/// is strictly decreasing in k, positive near 0 and negative near the bound.
/// c_eff(k) = k - alpha rightward, k + alpha leftward.
SemiWaveResult semiwave_speed(Direction direction, const ModelSpec& spec,
                              const SemiWaveOptions& opts = {});

}  // namespace sisfront
