#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "hardy/error.hpp"
#include "hardy/green.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracles: explicit maps onto the right half-plane or the unit disk.
double rhp(Complex z, Complex w) { return std::log(std::abs((z + std::conj(w)) / (z - w))); }
double disk(Complex z, Complex w) { return std::log(std::abs((1.0 - z * std::conj(w)) / (z - w))); }

double sector_oracle(const Sector& s, Complex z, Complex w) {
  auto m = [&](Complex x) { return std::pow((x - s.vertex) * std::polar(1.0, -s.bisector_angle), kPi / (2.0 * s.half_angle)); };
  return rhp(m(z), m(w));
}

double slit_oracle(const SlitPlane& s, Complex z, Complex w) {
  auto m = [&](Complex x) { return std::sqrt((x - s.tip) * std::polar(1.0, kPi - s.ray_angle)); };
  return rhp(m(z), m(w));
}

double strip_oracle(const Strip& s, Complex z, Complex w) {
  auto m = [&](Complex x) { return std::exp(kPi / (2.0 * s.half_width) * (x - s.anchor) * std::polar(1.0, -s.direction)); };
  return rhp(m(z), m(w));
}

double exterior_oracle(const ExteriorOfDisk& e, Complex z, Complex w) {
  auto m = [&](Complex x) { return e.radius / (x - e.center); };
  return disk(m(z), m(w));
}

// Exterior of the segment [-1, 1] via the inverse Joukowski map.
double segment_oracle(Complex z, Complex w) {
  auto m = [](Complex x) {
    Complex s = x + std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
    return 1.0 / s;
  };
  return disk(m(z), m(w));
}

Complex random_point(std::mt19937_64& rng, const DomainSpec& spec, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  for (;;) {
    const Complex z = spec.base_point() + Complex(n(rng), n(rng));
    if (contains(spec, z) && distance_to_complement(spec, z) > 1e-3) return z;
  }
}

}  // namespace

TEST_CASE("unit disk Green function") {
  CHECK(green_disk({0.0, 0.0}, {0.5, 0.0}) == doctest::Approx(std::log(2.0)));
  CHECK(std::isinf(green_disk({0.3, 0.1}, {0.3, 0.1})));
  CHECK(green_disk(std::polar(1.0, 0.7), {0.2, 0.3}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(green_disk({1.5, 0.0}, {0.0, 0.0}), Error);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    const Complex z{u(rng), u(rng)}, w{u(rng), u(rng)}, a{u(rng) * 0.5, u(rng) * 0.5};
    CHECK(green_disk(z, w) == doctest::Approx(green_disk(w, z)).epsilon(1e-12));
    CHECK(green_disk(z, w) == doctest::Approx(disk(z, w)).epsilon(1e-12));
    // Invariance under the disk automorphism x -> (x - a) / (1 - conj(a) x).
    auto phi = [&](Complex x) { return (x - a) / (1.0 - std::conj(a) * x); };
    CHECK(green_disk(phi(z), phi(w)) == doctest::Approx(green_disk(z, w)).epsilon(1e-10));
  }
}

TEST_CASE("half-plane Green function") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Complex z{u(rng), u(rng) - 1.5}, w{u(rng), u(rng) - 1.5};
    CHECK(green_right_half_plane(z, w) == doctest::Approx(rhp(z, w)).epsilon(1e-12));
  }
  CHECK(green_right_half_plane({0.0, 2.0}, {1.0, 0.0}) == 0.0);
}

TEST_CASE("closed forms agree with explicit conformal maps") {
  std::mt19937_64 rng(11);
  const Sector sec{{0.5, -0.5}, 0.4, kPi / 3};
  const SlitPlane sl{{0.25, 0.0}, kPi};
  const SlitPlane sl2{{1.0, 1.0}, 0.3};
  const Strip st{{0.0, 1.0}, 0.2, 0.7};
  const ExteriorOfDisk ex{{5.0, 0.0}, 1.0};
  const Sector wide{{0.0, 0.0}, 0.0, kPi};
  struct Case {
    DomainSpec spec;
    std::function<double(Complex, Complex)> oracle;
  };
  const std::vector<Case> cases{
      {DomainSpec(sec, {1.5, -0.3}), [&](Complex z, Complex w) { return sector_oracle(sec, z, w); }},
      {DomainSpec(wide, {1.0, 0.0}), [&](Complex z, Complex w) { return sector_oracle(wide, z, w); }},
      {DomainSpec(sl, {1.0, 0.0}), [&](Complex z, Complex w) { return slit_oracle(sl, z, w); }},
      {DomainSpec(sl2, {0.0, 0.0}), [&](Complex z, Complex w) { return slit_oracle(sl2, z, w); }},
      {DomainSpec(st, {0.3, 1.1}), [&](Complex z, Complex w) { return strip_oracle(st, z, w); }},
      {DomainSpec(ex, {0.0, 0.0}), [&](Complex z, Complex w) { return exterior_oracle(ex, z, w); }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.spec.kind_name());
    for (int i = 0; i < 40; ++i) {
      const Complex z = random_point(rng, c.spec, 1.0);
      const Complex w = c.spec.base_point();
      if (std::abs(z - w) < 1e-3) continue;
      const double g = closed_form_green(c.spec, z, w);
      CHECK(g == doctest::Approx(c.oracle(z, w)).epsilon(1e-9));
      CHECK(g > 0.0);
    }
  }
}

TEST_CASE("closed form is zero off the domain and unsupported for general complements") {
  const DomainSpec sl(SlitPlane{{0.25, 0.0}, kPi}, {1.0, 0.0});
  CHECK(closed_form_green(sl, {-2.0, 0.0}, {1.0, 0.0}) == 0.0);
  const DomainSpec c(ComplementOf{{ClosedDisk{{0.0, 0.0}, 1.0}}}, {3.0, 0.0});
  CHECK_THROWS_AS(closed_form_green(c, {2.0, 0.0}, {3.0, 0.0}), Error);
}

TEST_CASE("walk on spheres reproduces closed forms") {
  WosConfig cfg;
  cfg.walks = 20000;
  const DomainSpec d(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0});
  const auto e = wos_green(d, {0.4, 0.2}, {-0.1, 0.3}, cfg);
  CHECK(std::abs(e.estimate - green_disk({0.4, 0.2}, {-0.1, 0.3})) <= 4.0 * e.stderr_ + 5e-6);
  CHECK(e.failed_walks == 0);

  const DomainSpec ext(ExteriorOfDisk{{0.0, 0.0}, 1.0}, {2.0, 0.0});
  const auto f = wos_green(ext, {-3.0, 1.0}, {2.0, 0.0}, cfg);
  CHECK(std::abs(f.estimate - disk(1.0 / Complex(-3.0, 1.0), 0.5)) <= 4.0 * f.stderr_ + 5e-6);
}

TEST_CASE("walk on spheres for the exterior of a segment") {
  const DomainSpec spec(ComplementOf{{Segment{{-1.0, 0.0}, {1.0, 0.0}}}}, {0.0, 1.0});
  WosConfig cfg;
  cfg.walks = 20000;
  for (Complex z : {Complex(2.0, 0.5), Complex(-0.5, -1.0), Complex(0.0, 4.0)}) {
    const auto e = wos_green(spec, z, {0.0, 1.0}, cfg);
    CHECK(std::abs(e.estimate - segment_oracle(z, {0.0, 1.0})) <= 4.0 * e.stderr_ + 5e-6);
  }
}

TEST_CASE("walk on spheres ignores isolated points of the complement") {
  const DomainSpec with_point(ComplementOf{{ClosedDisk{{0.0, 0.0}, 1.0}, Point{{0.0, 2.5}}}}, {3.0, 0.0});
  const DomainSpec without(ComplementOf{{ClosedDisk{{0.0, 0.0}, 1.0}}}, {3.0, 0.0});
  WosConfig cfg;
  cfg.walks = 4000;
  const auto a = wos_green(with_point, {0.0, 2.0}, {3.0, 0.0}, cfg);
  const auto b = wos_green(without, {0.0, 2.0}, {3.0, 0.0}, cfg);
  CHECK(std::abs(a.estimate - b.estimate) <= 4.0 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("walk on spheres is deterministic per seed") {
  const DomainSpec spec(ComplementOf{{ClosedDisk{{-2.0, 0.0}, 1.0}, ClosedDisk{{2.0, 0.0}, 1.0}}}, {0.0, 0.0});
  WosConfig cfg;
  cfg.walks = 3000;
  const auto a = wos_green(spec, {0.5, 1.0}, {0.0, 0.0}, cfg);
  const auto b = wos_green(spec, {0.5, 1.0}, {0.0, 0.0}, cfg);
  CHECK(std::abs(a.estimate - b.estimate) <= 4.0 * std::hypot(a.stderr_, b.stderr_));
  CHECK(a.stderr_ == b.stderr_);
  cfg.seed += 1;
  CHECK(wos_green(spec, {0.5, 1.0}, {0.0, 0.0}, cfg).estimate != a.estimate);
}

TEST_CASE("walk on spheres preconditions") {
  const DomainSpec pts(ComplementOf{{Point{{0.0, 0.0}}, Point{{1.0, 0.0}}}}, {0.5, 0.5});
  CHECK_THROWS_AS(wos_green(pts, {0.2, 0.2}, {0.5, 0.5}, {}), Error);
  const DomainSpec d(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0});
  CHECK_THROWS_AS(wos_green(d, {0.0, 0.0}, {0.0, 0.0}, {}), Error);
  CHECK(wos_green(d, {2.0, 0.0}, {0.0, 0.0}, {}).estimate == 0.0);
  WosConfig bad;
  bad.walks = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("evaluator backends") {
  const DomainSpec d(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0});
  CHECK_FALSE(GreenEvaluator::automatic(d).is_monte_carlo());
  CHECK(std::string(GreenEvaluator::automatic(d).backend_name()) == "closed_form");
  const DomainSpec c(ComplementOf{{ClosedDisk{{0.0, 0.0}, 1.0}}}, {3.0, 0.0});
  const auto ev = GreenEvaluator::automatic(c);
  CHECK(ev.is_monte_carlo());
  const auto v = ev.eval({2.0, 0.0}, {3.0, 0.0}, 17);
  CHECK(v.stderr_ > 0.0);
  CHECK(ev.eval({2.0, 0.0}, {3.0, 0.0}, 17).value == v.value);
}
