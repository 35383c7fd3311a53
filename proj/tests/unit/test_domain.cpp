#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <type_traits>

#include "hardy/domain.hpp"
#include "hardy/domain_io.hpp"
#include "hardy/error.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense samples of the boundary of the complement, parametrised per kind.
std::vector<Complex> boundary_samples(const DomainSpec& spec) {
  std::vector<Complex> pts;
  const double step = 2e-4, reach = 60.0;
  auto segment = [&](Complex a, Complex b) {
    const int n = static_cast<int>(std::abs(b - a) / step) + 1;
    for (int k = 0; k <= n; ++k) pts.push_back(a + (b - a) * (static_cast<double>(k) / n));
  };
  auto circle = [&](Complex c, double r) {
    const int n = static_cast<int>(2.0 * kPi * r / step) + 1;
    for (int k = 0; k < n; ++k) pts.push_back(c + std::polar(r, 2.0 * kPi * k / n));
  };
  auto ray = [&](Complex from, double angle) { segment(from, from + std::polar(reach, angle)); };
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Disk> || std::is_same_v<T, ExteriorOfDisk>) {
          circle(d.center, d.radius);
        } else if constexpr (std::is_same_v<T, Sector>) {
          ray(d.vertex, d.bisector_angle + d.half_angle);
          ray(d.vertex, d.bisector_angle - d.half_angle);
        } else if constexpr (std::is_same_v<T, SlitPlane>) {
          ray(d.tip, d.ray_angle);
        } else if constexpr (std::is_same_v<T, Strip>) {
          const Complex dir = std::polar(1.0, d.direction), normal = dir * Complex(0.0, d.half_width);
          for (double side : {-1.0, 1.0}) segment(d.anchor + side * normal - reach * dir, d.anchor + side * normal + reach * dir);
        } else {
          for (const auto& o : d.obstacles) {
            if (const auto* c = std::get_if<ClosedDisk>(&o)) circle(c->center, c->radius);
            if (const auto* s = std::get_if<Segment>(&o)) segment(s->from, s->to);
            if (const auto* p = std::get_if<Point>(&o)) pts.push_back(p->at);
          }
        }
      },
      spec.kind());
  return pts;
}

double sampled_distance_oracle(const std::vector<Complex>& boundary, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& b : boundary) best = std::min(best, std::abs(b - z));
  return best;
}

std::vector<DomainSpec> samples() {
  return {
      DomainSpec(Disk{{1.0, -1.0}, 2.0}, {1.5, -0.5}),
      DomainSpec(Sector{{0.5, 0.5}, 0.3, kPi / 5}, {2.0, 1.0}),
      DomainSpec(SlitPlane{{0.25, 0.0}, kPi}, {1.0, 0.0}),
      DomainSpec(SlitPlane{{0.0, 0.0}, 1.0}, {-1.0, 0.2}),
      DomainSpec(Strip{{0.0, 1.0}, 0.7, 0.5}, {0.3, 1.2}),
      DomainSpec(ExteriorOfDisk{{5.0, 0.0}, 1.0}, {0.0, 0.0}),
      DomainSpec(ComplementOf{{ClosedDisk{{-2.0, 0.0}, 1.0}, Segment{{1.0, -1.0}, {3.0, 2.0}}}}, {0.0, 0.5}),
  };
}

}  // namespace

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(DomainSpec(Disk{{0.0, 0.0}, -1.0}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(DomainSpec(Disk{{0.0, 0.0}, 1.0}, {2.0, 0.0}), Error);
  CHECK_THROWS_AS(DomainSpec(Disk{{0.0, 0.0}, 1.0}, {1.0, 0.0}), Error);  // boundary
  CHECK_THROWS_AS(DomainSpec(Sector{{0.0, 0.0}, 0.0, 4.0}, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(DomainSpec(Strip{{0.0, 0.0}, 0.0, 0.0}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(DomainSpec(SlitPlane{{0.0, 0.0}, kPi}, {-1.0, 0.0}), Error);
  CHECK_THROWS_AS(DomainSpec(ComplementOf{{Point{{0.0, 0.0}}}}, {0.0, 0.0}), Error);
  try {
    DomainSpec(Disk{{0.0, 0.0}, 1.0}, {3.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidSpec);
  }
}

TEST_CASE("membership of simple points") {
  const DomainSpec slit(SlitPlane{{0.25, 0.0}, kPi}, {1.0, 0.0});
  CHECK(contains(slit, {0.0, 1e-9}));
  CHECK_FALSE(contains(slit, {0.0, 0.0}));
  CHECK_FALSE(contains(slit, {-3.0, 0.0}));
  const DomainSpec sector(Sector{{0.0, 0.0}, 0.0, kPi / 4}, {1.0, 0.0});
  CHECK(contains(sector, {1.0, 0.9}));
  CHECK_FALSE(contains(sector, {1.0, 1.1}));
  const DomainSpec ext(ExteriorOfDisk{{5.0, 0.0}, 1.0}, {0.0, 0.0});
  CHECK_FALSE(contains(ext, {5.5, 0.0}));
  CHECK(contains(ext, {100.0, 0.0}));
}

TEST_CASE("distance to complement matches a sampled-boundary oracle") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.5);
  for (const DomainSpec& spec : samples()) {
    const std::string kind = spec.kind_name();
    CAPTURE(kind);
    const auto boundary = boundary_samples(spec);
    for (int i = 0; i < 6; ++i) {
      const Complex z = spec.base_point() + Complex(n(rng), n(rng)) * 0.3;
      if (!contains(spec, z)) continue;
      const double d = distance_to_complement(spec, z);
      CHECK(d == doctest::Approx(sampled_distance_oracle(boundary, z)).epsilon(1e-4));
    }
  }
}

TEST_CASE("boundary crossings match sign changes of membership") {
  for (const DomainSpec& spec : samples()) {
    const std::string kind = spec.kind_name();
    CAPTURE(kind);
    for (double r : {0.7, 1.9, 4.3}) {
      const auto cuts = boundary_crossings(spec, spec.base_point(), r);
      CHECK(std::is_sorted(cuts.begin(), cuts.end()));
      // Every brute-force flip lies within a grid cell of some reported crossing.
      const int n = 20000;
      bool prev = contains(spec, spec.base_point() + std::polar(r, 0.0));
      for (int k = 1; k <= n; ++k) {
        const double th = 2.0 * kPi * k / n;
        const bool cur = contains(spec, spec.base_point() + std::polar(r, th));
        if (cur != prev) {
          bool near = false;
          for (double c : cuts) near = near || std::abs(c - th) < 4.0 * kPi / n || std::abs(c + 2.0 * kPi - th) < 4.0 * kPi / n;
          CHECK(near);
        }
        prev = cur;
      }
    }
  }
}

TEST_CASE("translation moves distances and reach with the domain") {
  const Complex v{3.0, -7.0};
  for (const DomainSpec& spec : samples()) {
    const std::string kind = spec.kind_name();
    CAPTURE(kind);
    const DomainSpec moved = spec.translated(v);
    const Complex z = spec.base_point() + Complex(0.1, 0.05);
    CHECK(contains(moved, z + v) == contains(spec, z));
    CHECK(distance_to_complement(moved, z + v) == doctest::Approx(distance_to_complement(spec, z)).epsilon(1e-12));
    CHECK(complement_reach(moved) == doctest::Approx(complement_reach(spec)).epsilon(1e-12));
  }
}

TEST_CASE("polar complements") {
  const DomainSpec pts(ComplementOf{{Point{{0.0, 0.0}}, Point{{1.0, 0.0}}}}, {0.5, 0.5});
  CHECK(is_polar_complement(pts));
  CHECK(std::isinf(distance_to_nonpolar_complement(pts, {0.5, 0.5})));
  CHECK(distance_to_complement(pts, {0.5, 0.5}) == doctest::Approx(std::sqrt(0.5)));
  const DomainSpec mixed(ComplementOf{{Point{{0.0, 0.0}}, ClosedDisk{{3.0, 0.0}, 1.0}}}, {0.5, 0.5});
  CHECK_FALSE(is_polar_complement(mixed));
  CHECK(distance_to_nonpolar_complement(mixed, {0.5, 0.0}) == doctest::Approx(1.5));
  CHECK(nearest_nonpolar_complement_point(mixed, {0.5, 0.0}) == Complex(2.0, 0.0));
}

TEST_CASE("bounded complements and enclosing circles") {
  CHECK(DomainSpec(ExteriorOfDisk{{5.0, 0.0}, 1.0}, {0.0, 0.0}).has_bounded_complement());
  CHECK_FALSE(DomainSpec(SlitPlane{{0.0, 0.0}, kPi}, {1.0, 0.0}).has_bounded_complement());
  const DomainSpec two(ComplementOf{{ClosedDisk{{-2.0, 0.0}, 1.0}, ClosedDisk{{2.0, 0.0}, 1.0}}}, {0.0, 0.0});
  const auto c = enclosing_circle_of_complement(two);
  REQUIRE(c.has_value());
  for (double th = 0; th < 2 * kPi; th += 0.01) {
    CHECK(std::abs(Complex(-2.0, 0.0) + std::polar(1.0, th) - c->center) <= c->radius + 1e-12);
    CHECK(std::abs(Complex(2.0, 0.0) + std::polar(1.0, th) - c->center) <= c->radius + 1e-12);
  }
  CHECK(complement_reach(two) == doctest::Approx(3.0));
}

TEST_CASE("JSON specs round-trip") {
  for (const DomainSpec& spec : samples()) {
    const std::string kind = spec.kind_name();
    CAPTURE(kind);
    const std::string text = dump_domain_spec(spec);
    CHECK(parse_domain_spec(text) == spec);
    CHECK(dump_domain_spec(parse_domain_spec(text)) == text);
  }
  const DomainSpec pts(ComplementOf{{Point{{0.1, 0.7}}, Point{{1.0 / 3.0, 0.0}}}}, {0.5, 0.5});
  CHECK(parse_domain_spec(dump_domain_spec(pts)) == pts);
}

TEST_CASE("malformed JSON specs") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_domain_spec(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind_of("{") == ErrorKind::InvalidSpec);
  CHECK(kind_of(R"({"kind":"disk","center":[0,0],"radius":1})") == ErrorKind::InvalidSpec);
  CHECK(kind_of(R"({"kind":"blob","base_point":[0,0]})") == ErrorKind::InvalidSpec);
  CHECK(kind_of(R"({"kind":"disk","center":[0],"radius":1,"base_point":[0,0]})") == ErrorKind::InvalidSpec);
  CHECK(kind_of(R"({"kind":"disk","center":[0,0],"radius":"1","base_point":[0,0]})") == ErrorKind::InvalidSpec);
  CHECK_THROWS_AS(load_domain_spec("/nonexistent/spec.json"), Error);
}
