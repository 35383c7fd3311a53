#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardy/analytic.hpp"
#include "hardy/error.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

// sum over n >= 1 of |c_n|^2 for (1 - z)^-a, c_n = Gamma(n + a) / (Gamma(a) n!), plus the
// integral of the leading-order tail n^(2a-2) / Gamma(a)^2.
double power_map_coefficient_sum(double a) {
  const int n_max = 2000000;
  double sum = 0.0;
  for (int n = n_max; n >= 1; --n) {
    const double log_c = std::lgamma(n + a) - std::lgamma(a) - std::lgamma(n + 1.0);
    sum += std::exp(2.0 * log_c);
  }
  const double g = std::tgamma(a);
  sum += std::pow(n_max + 0.5, 2.0 * a - 1.0) / ((1.0 - 2.0 * a) * g * g);
  return sum;
}

}  // namespace

TEST_CASE("parsing function specs") {
  CHECK(std::holds_alternative<PowerMap>(AnalyticFunctionSpec::parse("power:1.5").kind()));
  CHECK(std::holds_alternative<KoebeSquare>(AnalyticFunctionSpec::parse("koebe2").kind()));
  const auto fab = AnalyticFunctionSpec::parse("fab:2:1");
  REQUIRE(std::holds_alternative<ExtremalFab>(fab.kind()));
  CHECK(std::get<ExtremalFab>(fab.kind()).C == doctest::Approx(make_extremal_map(2.0, 1.0).C));
  CHECK(AnalyticFunctionSpec::parse("identity").value({0.3, 0.2}) == Complex(0.3, 0.2));
  CHECK_THROWS_AS(AnalyticFunctionSpec::parse("power:"), Error);
  CHECK_THROWS_AS(AnalyticFunctionSpec::parse("power:-1"), Error);
  CHECK_THROWS_AS(AnalyticFunctionSpec::parse("fab:3:1"), Error);
  CHECK_THROWS_AS(AnalyticFunctionSpec::parse("fab:2:1:5"), Error);  // margin violated
  CHECK_THROWS_AS(AnalyticFunctionSpec::parse("sin"), Error);
}

TEST_CASE("derivatives match finite differences") {
  const std::vector<AnalyticFunctionSpec> fs{AnalyticFunctionSpec::power_map(0.7), AnalyticFunctionSpec::koebe_square(),
                                             AnalyticFunctionSpec::extremal(make_extremal_map(1.5, 0.5))};
  for (const auto& f : fs) {
    CAPTURE(f.name());
    for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.9, -0.05)}) {
      const double h = 1e-6;
      const Complex fd = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
      CHECK(std::abs(f.derivative(z) - fd) <= 1e-6 * std::abs(fd));
      CHECK(f.log_abs(z) == doctest::Approx(std::log(std::abs(f.value(z)))).epsilon(1e-12));
      CHECK(f.log_abs_derivative(z) == doctest::Approx(std::log(std::abs(f.derivative(z)))).epsilon(1e-12));
    }
  }
}

TEST_CASE("maximum modulus on the positive axis") {
  const auto f = AnalyticFunctionSpec::power_map(1.0);
  CHECK(*f.max_modulus(0.5) == doctest::Approx(2.0));
  const auto custom = AnalyticFunctionSpec::custom({"z^2", [](Complex z) { return z * z; }, [](Complex z) { return 2.0 * z; }, {}, false});
  CHECK_FALSE(custom.max_modulus(0.5).has_value());
  CHECK_FALSE(custom.is_univalent());
}

TEST_CASE("log-power integral classification") {
  CHECK(classify_log_power_integral({-0.5, 0.0, 3.0}) == Convergence::Converges);
  CHECK(classify_log_power_integral({-1.5, 10.0, 3.0}) == Convergence::Diverges);
  CHECK(classify_log_power_integral({-1.0, 1.5, 3.0}) == Convergence::Converges);
  CHECK(classify_log_power_integral({-1.0, 1.0, 3.0}) == Convergence::Diverges);
  CHECK(classify_log_power_integral({-1.0 + 1e-13, 0.5, 3.0}) == Convergence::Diverges);
  try {
    classify_log_power_integral({0.0, 0.0, 2.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("area integral of the identity") {
  // Integral over the disk of log(1/|z|) is pi / 2.
  CHECK(littlewood_paley_integral(AnalyticFunctionSpec::identity(), 2.0, 1.0, false) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
  // With weight log(1/|z|)^2: 2 pi * 2 / 8 = pi / 2 as well.
  CHECK(littlewood_paley_integral(AnalyticFunctionSpec::identity(), 2.0, 2.0, false) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
}

TEST_CASE("area integral of a power map against its Taylor coefficients") {
  // With p = 2 the area integral is (pi / 2) times the sum of |c_n|^2 over n >= 1.
  const double a = 0.25;
  const double expected = kPi / 2.0 * power_map_coefficient_sum(a);
  CHECK(littlewood_paley_integral(AnalyticFunctionSpec::power_map(a), 2.0, 1.0, false) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("Hardy membership of power maps") {
  const auto f = AnalyticFunctionSpec::power_map(1.0);
  CHECK(lp_hardy_membership(f, 0.5).member());
  CHECK(lp_hardy_membership(f, 1.5).non_member());
  CHECK(lp_hardy_membership(AnalyticFunctionSpec::identity(), 4.0).member());
}

TEST_CASE("Bergman membership by the area criterion") {
  const auto f = AnalyticFunctionSpec::power_map(1.0);
  // (1 - z)^-1 is in A^p_alpha iff p < alpha + 2.
  CHECK(lp_bergman_membership(f, 1.0, 0.0).member());
  CHECK(lp_bergman_membership(f, 3.0, 0.0).non_member());
}

TEST_CASE("maximum-modulus criterion") {
  // (1 - z)^-a is in A^p_alpha iff a p < alpha + 2.
  const auto f = AnalyticFunctionSpec::power_map(1.0);
  CHECK(bgp_membership(f, 1.5, 0.0).member());
  CHECK(bgp_membership(f, 2.0, 0.0).non_member());
  CHECK(bgp_membership(f, 2.0, 0.0).exact);
  const auto k = AnalyticFunctionSpec::koebe_square();
  for (double p : {1.0, 2.0, 4.0}) CHECK(bgp_membership(k, p, 2.0 * p - 2.0).non_member());
  CHECK(bgp_membership(k, 0.9, 0.0).member());
  CHECK_THROWS_AS(bgp_membership(AnalyticFunctionSpec::power_map(3.0), 1.0, 0.0), Error);
  // Numeric sweep for a custom univalent map with a known maximum modulus.
  const auto g = AnalyticFunctionSpec::custom({"(1-z)^-1", [](Complex z) { return 1.0 / (1.0 - z); },
                                                [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); },
                                                [](double r) { return 1.0 / (1.0 - r); }, true});
  CHECK(bgp_membership(g, 1.5, 0.0).member());
  CHECK(bgp_membership(g, 2.5, 0.0).non_member());
}

TEST_CASE("extremal constant") {
  const auto f = make_extremal_map(2.0, 1.0);
  CHECK(f.C == doctest::Approx(30.381875).epsilon(1e-6));
  CHECK(std::abs(f.C - 30.44) / 30.44 < 5e-3);
  CHECK(f.margin_angle() == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  CHECK(make_extremal_map(1.0, 1.0).C == doctest::Approx(88.711).epsilon(1e-4));
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {a / 4, a / 2, a}) CHECK(make_extremal_map(a, b).satisfies_margin());
  }
  CHECK_THROWS_AS(make_extremal_map(2.5, 1.0), Error);
}

TEST_CASE("sampled univalence") {
  for (double b : {0.25, 1.0, 2.0}) {
    const auto rep = check_univalence_sampled(make_extremal_map(2.0, b), 10000);
    CHECK(rep.passed);
    CHECK(rep.reflection_ok);
    CHECK(rep.min_real_derivative > 0.0);
  }
  // Too small a constant breaks the sampled condition.
  CHECK_FALSE(check_univalence_sampled({1.0, 1.0, 2.05}, 10000).passed);
}

TEST_CASE("extremal membership flips on the critical line") {
  const auto f = make_extremal_map(2.0, 1.0);
  for (double p : {0.6, 0.9, 0.999, 1.0}) CHECK(classify_extremal_membership(f, p, 2.0 * p - 2.0).non_member());
  for (double p : {1.001, 1.5, 4.0}) CHECK(classify_extremal_membership(f, p, 2.0 * p - 2.0).member());
  // Off the line the power term decides.
  CHECK(classify_extremal_membership(f, 1.0, 1.0).member());
  CHECK(classify_extremal_membership(f, 2.0, 0.0).non_member());
}
