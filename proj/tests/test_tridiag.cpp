#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sisfront/tridiag.hpp"

using namespace sisfront;

namespace {

// discrete Dirichlet Laplacian -u'' on n interior nodes, spacing dx:
// exact eigenvalues are (2 - 2 cos(k pi/(n+1)))/dx^2
SymTridiag laplacian(int n, double dx) {
    SymTridiag t;
    t.diag.assign(n, 2.0 / (dx * dx));
    t.offdiag.assign(n - 1, -1.0 / (dx * dx));
    return t;
}

double laplacian_eig(int k, int n, double dx) {
    return (2.0 - 2.0 * std::cos(k * M_PI / (n + 1))) / (dx * dx);
}

}  // namespace

TEST_CASE("thomas solves random diagonally dominant systems") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5 + trial;
        std::vector<double> lower(n - 1), diag(n), upper(n - 1), rhs(n);
        for (int i = 0; i < n; ++i) {
            diag[i] = 4.0 + uni(rng);
            rhs[i] = uni(rng);
            if (i + 1 < n) {
                lower[i] = uni(rng);
                upper[i] = uni(rng);
            }
        }
        auto x = thomas_solve(lower, diag, upper, rhs);
        for (int i = 0; i < n; ++i) {
            double ax = diag[i] * x[i];
            if (i > 0) ax += lower[i - 1] * x[i - 1];
            if (i + 1 < n) ax += upper[i] * x[i + 1];
            CHECK(ax == doctest::Approx(rhs[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("sturm count against the exact Laplacian spectrum") {
    const int n = 200;
    const double dx = 1.0 / (n + 1);
    SymTridiag t = laplacian(n, dx);
    for (int k : {1, 3, 17, 100, 199}) {
        const double between = 0.5 * (laplacian_eig(k, n, dx) + laplacian_eig(k + 1 > n ? n : k + 1, n, dx));
        if (k < n) CHECK(sturm_count(t, between) == k);
    }
    CHECK(sturm_count(t, laplacian_eig(1, n, dx) * 0.999) == 0);
}

TEST_CASE("smallest eigenvalue matches the closed form") {
    for (int n : {50, 199, 801}) {
        const double dx = 2.0 / (n + 1);
        SymTridiag t = laplacian(n, dx);
        const double exact = laplacian_eig(1, n, dx);
        CHECK(smallest_eigenvalue(t) == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("inverse iteration recovers a positive eigenvector with small residual") {
    const int n = 300;
    const double dx = 1.0 / (n + 1);
    SymTridiag t = laplacian(n, dx);
    const double lambda = smallest_eigenvalue(t);
    auto v = inverse_iteration(t, lambda);

    double vmax = 0.0;
    for (double vi : v) {
        CHECK(vi > 0.0);
        vmax = std::max(vmax, vi);
    }
    CHECK(vmax == doctest::Approx(1.0));

    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        double tv = t.diag[i] * v[i];
        if (i > 0) tv += t.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) tv += t.offdiag[i] * v[i + 1];
        res = std::max(res, std::abs(tv - lambda * v[i]));
    }
    CHECK(res <= 1e-6 * std::abs(lambda));
}

TEST_CASE("pencil eigenvalue: unit weight reduces to 1/lambda_min") {
    const int n = 120;
    const double dx = 1.0 / (n + 1);
    SymTridiag t = laplacian(n, dx);
    std::vector<double> weight(n, 1.0);
    const double expected = 1.0 / smallest_eigenvalue(t);

    auto power = largest_pencil_eigenvalue(t, weight);
    auto sturm = largest_pencil_eigenvalue_sturm(t, weight);
    CHECK(power.value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(sturm.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("pencil eigenvalue: power iteration and Sturm route agree") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.5, 2.5);
    const int n = 150;
    const double dx = 1.0 / (n + 1);
    SymTridiag t = laplacian(n, dx);
    for (int i = 0; i < n; ++i) t.diag[i] += uni(rng);  // positive potential
    std::vector<double> weight(n);
    for (int i = 0; i < n; ++i) weight[i] = uni(rng);

    auto power = largest_pencil_eigenvalue(t, weight);
    auto sturm = largest_pencil_eigenvalue_sturm(t, weight);
    CHECK(sturm.value == doctest::Approx(power.value).epsilon(1e-8));
    for (int i = 0; i < n; ++i) {
        CHECK(sturm.vector[i] > 0.0);
        CHECK(sturm.vector[i] == doctest::Approx(power.vector[i]).epsilon(1e-5));
    }
}
