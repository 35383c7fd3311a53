#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/error.hpp"
#include "hardy/estimator.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

const DomainSpec& slit() {
  static const DomainSpec s(SlitPlane{{0.25, 0.0}, kPi}, {1.0, 0.0});
  return s;
}

// Profile with psi = A r^-s on [r_min, r_max].
PsiProfile synthetic(double s, double r_min = 0.5, double r_max = 1e6, unsigned ppd = 8) {
  PsiProfile p{slit(), slit().base_point(), log_grid(r_min, r_max, ppd), {}, {}, "synthetic"};
  for (double r : p.radii) {
    p.values.push_back(3.0 * std::pow(r, -s));
    p.quad_errors.push_back(0.0);
  }
  return p;
}

}  // namespace

TEST_CASE("pure power laws give their exponent") {
  for (double s : {0.1, 0.5, 1.0, 3.0, 7.5}) {
    const auto e = estimate_hardy_number(synthetic(s));
    CHECK(e.value.value() == doctest::Approx(s).epsilon(1e-9));
    CHECK(e.method == EstimateMethod::LiminfSlope);
    CHECK(e.confidence < 1e-9);
    CHECK_FALSE(e.window_slopes.empty());
  }
}

TEST_CASE("the estimate is the smallest window slope") {
  PsiProfile p = synthetic(1.0);
  // Flatten the decay over one decade near the end.
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.radii[k] > 1e4) p.values[k] = 3.0 * 1e-4 * std::pow(p.radii[k] / 1e4, -0.6);
  }
  const auto e = estimate_hardy_number(p);
  CHECK(e.value.value() == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(e.confidence == doctest::Approx(0.4).epsilon(1e-2));
}

TEST_CASE("zero tails and huge slopes are infinite") {
  PsiProfile p = synthetic(1.0);
  for (std::size_t k = p.size() / 2; k < p.size(); ++k) p.values[k] = 0.0;
  const auto e = estimate_hardy_number(p);
  CHECK(e.value.is_infinite());
  CHECK(e.zero_tail);
  CHECK(e.method == EstimateMethod::InfinityCap);
  CHECK(estimate_hardy_number(synthetic(60.0, 0.5, 1e4)).value.is_infinite());
}

TEST_CASE("polar complements short-circuit") {
  const DomainSpec pts(ComplementOf{{Point{{0.0, 0.0}}}, }, {1.0, 1.0});
  const auto e = polar_shortcut(pts);
  REQUIRE(e.has_value());
  CHECK(e->value.value() == 0.0);
  CHECK(e->method == EstimateMethod::PolarShortcut);
  CHECK_FALSE(polar_shortcut(slit()).has_value());
  const auto b = estimate_bergman_numbers(*e, {-0.5, 0.0, 3.0});
  for (const auto& [alpha, v] : b.b_alpha) CHECK(v.value() == 0.0);
  const auto v = polar_membership(SpaceParams::hardy(0.1));
  CHECK(v.non_member());
  CHECK(v.exact);
}

TEST_CASE("input validation") {
  auto kind = [](const PsiProfile& p) {
    try {
      estimate_hardy_number(p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind(synthetic(1.0, 0.5, 100.0)) == ErrorKind::Range);
  PsiProfile nan = synthetic(1.0);
  nan.values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind(nan) == ErrorKind::Data);
  PsiProfile gap = synthetic(1.0);
  gap.values[3] = 0.0;
  CHECK(kind(gap) == ErrorKind::Data);
  PsiProfile neg = synthetic(1.0);
  neg.values[3] = -1.0;
  CHECK(kind(neg) == ErrorKind::Data);
}

TEST_CASE("Bergman numbers scale the Hardy number") {
  const auto e = estimate_hardy_number(synthetic(0.5));
  const auto b = estimate_bergman_numbers(e, {-0.5, 0.0, 1.0});
  CHECK(b.b.value() == doctest::Approx(0.5));
  CHECK(b.b_alpha.at(-0.5).value() == doctest::Approx(0.75));
  CHECK(b.b_alpha.at(1.0).value() == doctest::Approx(1.5));
  CHECK_THROWS_AS(estimate_bergman_numbers(e, {-1.0}), Error);
}

TEST_CASE("moment of the disk profile") {
  // For psi = 2 pi log(1/r) on (0, 1) the integral of r^(p-1) psi is 2 pi / p^2.
  const auto ev = GreenEvaluator::closed_form(DomainSpec(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0}));
  const auto p = build_profile(ev, 0.01, 10.0, 200);
  for (double q : {0.5, 1.0, 2.0}) {
    const auto m = psi_moment(p, q, 1.0);
    CHECK(m.zero_tail);
    CHECK(m.pole_model_exact);
    CHECK(m.pole_constant == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(m.total() == doctest::Approx(2.0 * kPi / (q * q)).epsilon(1e-4));
  }
  // psi^2: integral of r^(p-1) (2 pi log(1/r))^2 is 8 pi^2 / p^3.
  CHECK(psi_moment(p, 1.0, 2.0).total() == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-4));
}

TEST_CASE("moment tails follow the fitted power law") {
  const auto m = psi_moment(synthetic(1.0, 0.5, 1e4, 16), 0.5, 1.0);
  CHECK(m.tail_exponent == doctest::Approx(1.0));
  // Tail of 3 r^-1 r^(-1/2) from 1e4 is 6 / sqrt(1e4).
  CHECK(m.tail == doctest::Approx(6.0 / 100.0).epsilon(1e-9));
  CHECK(std::isinf(psi_moment(synthetic(1.0, 0.5, 1e4), 1.5, 1.0).tail));
}

TEST_CASE("Hardy membership from the moment integral") {
  const auto p = synthetic(1.0);
  CHECK(hardy_membership_via_psi(p, 0.5).member());
  CHECK(hardy_membership_via_psi(p, 2.0).non_member());
  const auto edge = hardy_membership_via_psi(p, 1.02);
  CHECK(edge.status == MembershipStatus::Inconclusive);
  CHECK(edge.margin == doctest::Approx(-0.02));
}

TEST_CASE("Bergman non-membership is only certified on divergence") {
  const auto p = synthetic(0.5);
  CHECK(bergman_nonmembership_via_psi(p, 2.0, 0.0).non_member());
  CHECK(bergman_nonmembership_via_psi(p, 0.5, 0.0).member());
  CHECK(bergman_nonmembership_via_psi(p, 0.98, 0.0).status == MembershipStatus::Inconclusive);
  CHECK_THROWS_AS(bergman_nonmembership_via_psi(p, 1.0, -1.5), Error);
}
