#pragma once

#include <vector>

#include "sisfront/model.hpp"

namespace sisfront {

/// Endemic equilibrium I* on the truncated domain [-L, L].
struct EquilibriumProfile {
    double L = 0.0;
    std::vector<double> x;      ///< nodes incl. the boundary at +-L
    std::vector<double> istar;  ///< positive profile; istar(+-L) = a/b by construction

    /// Value at an arbitrary point by cubic Hermite interpolation
    /// (clamped to the boundary value outside [-L, L]).
    double at(double xq) const;
};

struct EquilibriumOptions {
    double newton_tol = 1e-10;    ///< residual sup-norm
    int newton_max_iter = 60;
    double agreement_tol = 1e-7;  ///< two-sided initial-guess agreement
};

/// Solves the stationary problem
///   -d_I I'' + alpha I' = (beta - gamma) I - (beta/N*) I^2,  I(+-L) = a/b,
/// by Newton iteration on centered differences with n interior nodes.
/// Uniqueness inside [0, N*] is asserted by solving twice, from the constant
/// guesses a/b and N*, and requiring agreement to `agreement_tol`
/// (upper/lower-solution bracketing). Requires L >= 20.
EquilibriumProfile solve_equilibrium(const ModelSpec& spec, double L, int n,
                                     const EquilibriumOptions& opts = {});

}  // namespace sisfront
