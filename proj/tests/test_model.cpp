#include <doctest.h>

#include <cmath>

#include "sisfront/config.hpp"
#include "sisfront/model.hpp"

using namespace sisfront;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
    for (const auto& v : violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("study parameter set is valid") {
    ModelSpec spec = reference_model(1.5, 6.0);
    CHECK(validate(spec).empty());
}

TEST_CASE("strong advection is rejected") {
    // 2 sqrt(a d_I) = 2 sqrt(3*4) ~ 6.93, so alpha = 8 violates small advection
    ModelSpec spec = reference_model(8.0, 6.0);
    auto violations = validate(spec);
    REQUIRE_FALSE(violations.empty());
    CHECK(mentions(violations, "small advection"));
}

TEST_CASE("initial profile must vanish at the fronts") {
    ModelSpec spec = reference_model(1.5, 6.0);
    spec.i0 = Expression::parse("1");
    auto violations = validate(spec);
    REQUIRE_FALSE(violations.empty());
    CHECK(mentions(violations, "vanish at the initial fronts"));
}

TEST_CASE("declared far-field limits are cross-checked") {
    ModelSpec spec = reference_model(1.5, 6.0);
    spec.beta_inf = 3.5;  // wrong: beta tends to 4
    auto violations = validate(spec);
    CHECK(mentions(violations, "disagrees"));
}

TEST_CASE("bulk rates of the study set") {
    ModelSpec spec = reference_model(1.5, 6.0);
    BulkRates rates = bulk_rates(spec);
    CHECK(rates.a == doctest::Approx(3.0));
    CHECK(rates.b == doctest::Approx(2.0));
    CHECK(rates.c_fisher == doctest::Approx(4.0 * std::sqrt(3.0)));
    CHECK(spec.equilibrium_level() == doctest::Approx(1.5));
}

TEST_CASE("degenerate far-field limits fail assumption (H)") {
    ModelSpec spec = reference_model(0.0, 6.0);
    spec.beta = Expression::parse("2");
    spec.gamma = Expression::parse("2");
    spec.beta_inf = 2.0;
    spec.gamma_inf = 2.0;
    CHECK_THROWS_AS(bulk_rates(spec), ValidationError);
    CHECK(mentions(validate(spec), "assumption (H)"));
}

TEST_CASE("constant-coefficient identity beta = 2 gamma") {
    ModelSpec spec = reference_model(0.0, 6.0);
    spec.beta = Expression::parse("3");
    spec.gamma = Expression::parse("1.5");
    spec.beta_inf = 3.0;
    spec.gamma_inf = 1.5;
    BulkRates rates = bulk_rates(spec);
    CHECK(rates.a == doctest::Approx(spec.gamma_inf));
    CHECK(rates.b == doctest::Approx(2.0 * spec.gamma_inf / spec.n_star));
}

TEST_CASE("study coefficients decay to the far field like 1/(1+x^2)") {
    ModelSpec spec = reference_model(1.5, 6.0);
    for (double x = -40.0; x <= 40.0; x += 0.37) {
        CHECK(std::abs(spec.beta.eval(x) - 4.0) <= 2.0 / (1.0 + x * x) + 1e-15);
        CHECK(std::abs(spec.gamma.eval(x) - 1.0) <= 1.0 / (1.0 + x * x) + 1e-15);
    }
}

TEST_CASE("accessors are pure") {
    ModelSpec spec = reference_model(1.5, 6.0);
    CHECK(spec.beta.eval(0.7) == spec.beta.eval(0.7));
    CHECK(bulk_rates(spec).c_fisher == bulk_rates(spec).c_fisher);
    CHECK(front_velocity_bound(spec) == front_velocity_bound(spec));
}

TEST_CASE("velocity bound is positive and grows with mu") {
    ModelSpec lo = reference_model(1.5, 1.0);
    ModelSpec hi = reference_model(1.5, 6.0);
    CHECK(front_velocity_bound(lo) > 0.0);
    CHECK(front_velocity_bound(hi) == doctest::Approx(6.0 * front_velocity_bound(lo)));
}

TEST_CASE("evaluation failure is reported with the probe point") {
    ModelSpec spec = reference_model(1.5, 6.0);
    spec.gamma = Expression::parse("1/x");  // blows up at the x = 0 probe
    auto violations = validate(spec);
    CHECK(mentions(violations, "failed to evaluate"));
}
