#include "sisfront/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sisfront {

void thomas_solve_into(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch) {
    const std::size_t n = diag.size();
    std::span<double> c = scratch.subspan(0, n);  // modified superdiagonal
    std::span<double> d = scratch.subspan(n, n);  // modified rhs

    double pivot = diag[0];
    if (pivot == 0.0) throw NumericError("tridiagonal solve: zero pivot at row 0");
    c[0] = (n > 1) ? upper[0] / pivot : 0.0;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if (pivot == 0.0)
            throw NumericError("tridiagonal solve: zero pivot at row " + std::to_string(i));
        c[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
}

std::vector<double> thomas_solve(std::span<const double> lower,
                                 std::span<const double> diag,
                                 std::span<const double> upper,
                                 std::span<const double> rhs) {
    std::vector<double> x(diag.size());
    std::vector<double> scratch(2 * diag.size());
    thomas_solve_into(lower, diag, upper, rhs, x, scratch);
    return x;
}

int sturm_count(const SymTridiag& t, double sigma) {
    const int n = t.size();
    int count = 0;
    double q = t.diag[0] - sigma;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        double e = t.offdiag[i - 1];
        if (q == 0.0) q = std::numeric_limits<double>::min();  // standard guard
        q = t.diag[i] - sigma - e * e / q;
        if (q < 0.0) ++count;
    }
    return count;
}

double smallest_eigenvalue(const SymTridiag& t, double rel_tol) {
    const int n = t.size();
    if (n < 1) throw NumericError("smallest_eigenvalue: empty matrix");

    // Gershgorin bounds
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(t.offdiag[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    // invariant: count(lo) == 0, count(hi) >= 1; the tolerance tracks the
    // magnitude of the enclosed eigenvalue, not the (large) matrix norm
    for (;;) {
        const double scale = std::max(1.0, std::min(std::abs(lo), std::abs(hi)));
        if (hi - lo <= rel_tol * scale) break;
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(t, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, int max_iter) {
    const int n = t.size();
    // shift slightly off the eigenvalue so the shifted matrix stays invertible
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(t.diag[i]));
    for (int i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(t.offdiag[i]));
    const double shift = lambda - 1e-12 * std::max(scale, 1.0);

    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = t.diag[i] - shift;

    std::vector<double> v(n, 1.0), w(n), scratch(2 * n);
    double norm = std::sqrt(static_cast<double>(n));
    for (double& vi : v) vi /= norm;

    double prev_change = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iter; ++iter) {
        thomas_solve_into(t.offdiag, diag, t.offdiag, v, w, scratch);
        norm = 0.0;
        for (double wi : w) norm += wi * wi;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw NumericError("inverse iteration produced a degenerate vector");
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] /= norm;
            change = std::max(change, std::abs(std::abs(w[i]) - std::abs(v[i])));
        }
        v.swap(w);
        if (change < 1e-14 && prev_change < 1e-14) break;
        prev_change = change;
    }

    // sup-normalize with positive dominant component
    double vmax = 0.0;
    for (double vi : v) vmax = std::max(vmax, std::abs(vi));
    double sum = 0.0;
    for (double vi : v) sum += vi;
    double s = (sum < 0.0 ? -1.0 : 1.0) / vmax;
    for (double& vi : v) vi *= s;
    return v;
}

PencilResult largest_pencil_eigenvalue(const SymTridiag& a,
                                       std::span<const double> weight,
                                       double rel_tol, int max_iter) {
    const int n = a.size();
    std::vector<double> v(n, 1.0), bv(n), w(n), scratch(2 * n);

    double value = 0.0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (int i = 0; i < n; ++i) bv[i] = weight[i] * v[i];
        thomas_solve_into(a.offdiag, a.diag, a.offdiag, bv, w, scratch);

        // Rayleigh quotient for the pencil: (v' B v) / (v' A v), evaluated
        // at the new iterate w
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) num += weight[i] * w[i] * w[i];
        for (int i = 0; i < n; ++i) {
            double av = a.diag[i] * w[i];
            if (i > 0) av += a.offdiag[i - 1] * w[i - 1];
            if (i + 1 < n) av += a.offdiag[i] * w[i + 1];
            den += w[i] * av;
        }
        if (!(den != 0.0) || !std::isfinite(num / den))
            throw NumericError("pencil power iteration: degenerate Rayleigh quotient");
        double new_value = num / den;

        double norm = 0.0;
        for (double wi : w) norm = std::max(norm, std::abs(wi));
        for (int i = 0; i < n; ++i) v[i] = w[i] / norm;

        if (iter > 0 && std::abs(new_value - value) <= rel_tol * std::abs(new_value)) {
            value = new_value;
            ++iter;
            break;
        }
        value = new_value;
    }
    if (iter >= max_iter) {
        // report the residual so the caller can see how close it got
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double av = a.diag[i] * v[i];
            if (i > 0) av += a.offdiag[i - 1] * v[i - 1];
            if (i + 1 < n) av += a.offdiag[i] * v[i + 1];
            res = std::max(res, std::abs(weight[i] * v[i] - value * av));
        }
        throw NumericError("pencil power iteration failed to converge after " +
                           std::to_string(max_iter) +
                           " sweeps (residual " + std::to_string(res) + ")");
    }

    double sum = 0.0;
    for (double vi : v) sum += vi;
    if (sum < 0.0)
        for (double& vi : v) vi = -vi;
    return {value, std::move(v), iter};
}

PencilResult largest_pencil_eigenvalue_sturm(const SymTridiag& a,
                                             std::span<const double> weight,
                                             double rel_tol) {
    const int n = a.size();
    SymTridiag scaled;
    scaled.diag.resize(n);
    scaled.offdiag.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        if (!(weight[i] > 0.0))
            throw NumericError("pencil transform needs a positive weight");
        scaled.diag[i] = a.diag[i] / weight[i];
    }
    for (int i = 0; i + 1 < n; ++i)
        scaled.offdiag[i] = a.offdiag[i] / std::sqrt(weight[i] * weight[i + 1]);

    const double nu = smallest_eigenvalue(scaled, rel_tol);
    if (!(nu > 0.0))
        throw NumericError("pencil lost positive definiteness (nu = " +
                           std::to_string(nu) + ")");

    std::vector<double> psi = inverse_iteration(scaled, nu);
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        psi[i] /= std::sqrt(weight[i]);
        vmax = std::max(vmax, std::abs(psi[i]));
    }
    for (double& v : psi) v /= vmax;
    return {1.0 / nu, std::move(psi), 0};
}

}  // namespace sisfront
