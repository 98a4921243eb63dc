#include <doctest.h>

#include <cmath>

#include "sisfront/config.hpp"
#include "sisfront/semiwave.hpp"

using namespace sisfront;

namespace {

ModelSpec rates_model(double a, double b, double d_I, double alpha, double mu) {
    // constant coefficients with beta_inf - gamma_inf = a and beta_inf/N* = b
    ModelSpec spec;
    spec.d_I = d_I;
    spec.alpha = alpha;
    spec.mu = mu;
    spec.h0 = 1.0;
    const double gamma = 1.0;
    const double beta = gamma + a;
    spec.n_star = beta / b;
    spec.beta = Expression::parse(std::to_string(beta));
    spec.gamma = Expression::parse(std::to_string(gamma));
    spec.i0 = Expression::parse("cos(pi*x/2)");
    spec.beta_inf = beta;
    spec.gamma_inf = gamma;
    return spec;
}

}  // namespace

TEST_CASE("conserved-energy oracle at zero effective speed") {
    // for c = 0, d_I p^2/2 + a q^2/2 - b q^3/3 is conserved along orbits,
    // so q'(0) = sqrt(a^3/(3 b^2 d_I))
    const double a = 3.0, b = 2.0, d_I = 4.0;
    auto r = semiwave_slope(0.0, a, b, d_I);
    const double expected = std::sqrt(a * a * a / (3.0 * b * b * d_I));
    CHECK(expected == doctest::Approx(0.75));
    CHECK(r.slope0 == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("slope decreases along increasing effective speed, to zero") {
    double prev = std::numeric_limits<double>::infinity();
    for (double c : {-2.0, 0.0, 2.0, 4.0, 6.0, 6.8}) {
        const double slope = semiwave_slope(c, 3.0, 2.0, 4.0).slope0;
        CHECK(slope > 0.0);
        CHECK(slope < prev);
        prev = slope;
    }
    CHECK(prev < 1e-5);  // endpoint of the family: slope -> 0+
}

TEST_CASE("no semi-wave at or beyond the Fisher speed") {
    const double fisher = 2.0 * std::sqrt(3.0 * 4.0);
    CHECK_THROWS_AS(semiwave_slope(fisher, 3.0, 2.0, 4.0), NumericError);
    CHECK_THROWS_AS(semiwave_slope(fisher + 1.0, 3.0, 2.0, 4.0), NumericError);
}

TEST_CASE("rescaling b -> sigma b divides profile and slope by sigma") {
    const double sigma = 2.0;
    auto base = semiwave_slope(1.0, 3.0, 2.0, 4.0);
    auto scaled = semiwave_slope(1.0, 3.0, sigma * 2.0, 4.0);
    CHECK(scaled.slope0 == doctest::Approx(base.slope0 / sigma).epsilon(1e-8));
    CHECK(scaled.profile.back().second ==
          doctest::Approx(base.profile.back().second / sigma).epsilon(1e-6));
}

TEST_CASE("profile is valid: increasing from 0 toward a/b") {
    auto r = semiwave_slope(1.5, 3.0, 2.0, 4.0);
    REQUIRE(r.profile.size() > 10);
    CHECK(r.profile.front().first == 0.0);
    CHECK(r.profile.front().second == doctest::Approx(0.0));
    double prev_q = -1.0;
    for (const auto& [z, q] : r.profile) {
        CHECK(q > prev_q);
        CHECK(q < 1.5 + 1e-8);
        prev_q = q;
    }
    CHECK(std::abs(r.profile.back().second - 1.5) < 1e-6);
}

TEST_CASE("matching condition and direction ordering") {
    ModelSpec spec = rates_model(3.0, 2.0, 4.0, 1.5, 6.0);
    auto right = semiwave_speed(Direction::Rightward, spec);
    auto left = semiwave_speed(Direction::Leftward, spec);
    ModelSpec nodrift = rates_model(3.0, 2.0, 4.0, 0.0, 6.0);
    auto k0 = semiwave_speed(Direction::Rightward, nodrift);
    auto k0l = semiwave_speed(Direction::Leftward, nodrift);

    // mu q'(0) = k to the root tolerance
    CHECK(6.0 * right.slope0 == doctest::Approx(right.k_star).epsilon(1e-8));
    CHECK(6.0 * left.slope0 == doctest::Approx(left.k_star).epsilon(1e-8));

    // alpha = 0: both directions coincide
    CHECK(k0.k_star == doctest::Approx(k0l.k_star).epsilon(1e-9));

    // 0 < k_l* < k0 < k_r* < 2 sqrt(a d_I) + alpha
    CHECK(left.k_star > 0.0);
    CHECK(left.k_star < k0.k_star);
    CHECK(k0.k_star < right.k_star);
    CHECK(right.k_star < 2.0 * std::sqrt(3.0 * 4.0) + 1.5);
    CHECK(left.k_star < 2.0 * std::sqrt(3.0 * 4.0) - 1.5);
}

TEST_CASE("speeds increase in a and decrease in b") {
    std::vector<double> in_a;
    for (double a : {2.0, 3.0, 4.0})
        in_a.push_back(
            semiwave_speed(Direction::Rightward, rates_model(a, 2.0, 4.0, 1.5, 6.0)).k_star);
    CHECK(in_a[0] < in_a[1]);
    CHECK(in_a[1] < in_a[2]);

    std::vector<double> in_b;
    for (double b : {1.0, 2.0, 4.0})
        in_b.push_back(
            semiwave_speed(Direction::Rightward, rates_model(3.0, b, 4.0, 1.5, 6.0)).k_star);
    CHECK(in_b[0] > in_b[1]);
    CHECK(in_b[1] > in_b[2]);
}

TEST_CASE("reversing the drift swaps the directional speeds") {
    ModelSpec fwd = rates_model(3.0, 2.0, 4.0, 1.5, 6.0);
    ModelSpec rev = rates_model(3.0, 2.0, 4.0, -1.5, 6.0);
    CHECK(semiwave_speed(Direction::Rightward, fwd).k_star ==
          doctest::Approx(semiwave_speed(Direction::Leftward, rev).k_star)
              .epsilon(1e-10));
    CHECK(semiwave_speed(Direction::Leftward, fwd).k_star ==
          doctest::Approx(semiwave_speed(Direction::Rightward, rev).k_star)
              .epsilon(1e-10));
}

TEST_CASE("residual changes sign exactly once across the bracket") {
    ModelSpec spec = rates_model(3.0, 2.0, 4.0, 1.5, 6.0);
    const BulkRates rates = bulk_rates(spec);
    const double k_max = rates.c_fisher + spec.alpha;
    int sign_changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < 64; ++i) {
        // stay clear of the degenerate endpoint where the slope underflows
        const double k = 1e-3 + (k_max - 0.05 - 1e-3) * i / 63.0;
        const double r =
            spec.mu * semiwave_slope(k - spec.alpha, rates.a, rates.b, spec.d_I).slope0 - k;
        if (have_prev && (r > 0) != (prev > 0)) ++sign_changes;
        prev = r;
        have_prev = true;
    }
    CHECK(sign_changes == 1);
}
