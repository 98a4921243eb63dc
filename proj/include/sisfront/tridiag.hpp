#pragma once

#include <span>
#include <vector>

#include "sisfront/errors.hpp"

namespace sisfront {

/// Solves the tridiagonal system with subdiagonal `lower` (size n-1),
/// diagonal `diag` (size n), superdiagonal `upper` (size n-1) by the
/// Thomas algorithm. Throws NumericError on a vanishing pivot.
std::vector<double> thomas_solve(std::span<const double> lower,
                                 std::span<const double> diag,
                                 std::span<const double> upper,
                                 std::span<const double> rhs);

/// In-place variant writing the solution into `x`; `scratch` must have
/// size >= 2n and is clobbered.
void thomas_solve_into(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch);

/// Symmetric tridiagonal matrix: `diag` (n entries) and `offdiag`
/// (n-1 entries).
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> offdiag;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues of T strictly below `sigma` (Sturm sequence count).
int sturm_count(const SymTridiag& t, double sigma);

/// Smallest eigenvalue by bisection with Sturm counts, certified to
/// relative tolerance `rel_tol` against the Gershgorin scale.
double smallest_eigenvalue(const SymTridiag& t, double rel_tol = 1e-12);

/// Eigenvector for the (simple) eigenvalue near `lambda` by shifted inverse
/// iteration, normalized to unit sup-norm with positive dominant sign.
std::vector<double> inverse_iteration(const SymTridiag& t, double lambda,
                                      int max_iter = 50);

/// Largest generalized eigenvalue L of  B v = L A v  where A is symmetric
/// positive-definite tridiagonal and B is the positive diagonal `weight`,
/// by inverse power iteration (repeated Thomas solves with A).
/// Also returns the eigenvector, sup-normalized and positive.
struct PencilResult {
    double value;
    std::vector<double> vector;
    int iterations;
};
PencilResult largest_pencil_eigenvalue(const SymTridiag& a,
                                       std::span<const double> weight,
                                       double rel_tol = 1e-10,
                                       int max_iter = 10000);

/// Same quantity through the similarity transform B^{-1/2} A B^{-1/2},
/// which stays symmetric tridiagonal: its smallest eigenvalue nu = 1/L is
/// certified by Sturm bisection and the eigenvector recovered by shifted
/// inverse iteration. Gap-independent, so it stays fast on wide intervals
/// where plain power iteration stalls.
PencilResult largest_pencil_eigenvalue_sturm(const SymTridiag& a,
                                             std::span<const double> weight,
                                             double rel_tol = 1e-10);

}  // namespace sisfront
