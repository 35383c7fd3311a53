#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/extended.hpp"
#include "hardy/parallel.hpp"
#include "hardy/space.hpp"

using namespace hardy;

TEST_CASE("extended non-negative reals") {
  CHECK(ExtendedNonNegReal().value() == 0.0);
  CHECK(ExtendedNonNegReal::infinity().is_infinite());
  CHECK(ExtendedNonNegReal::infinity().str() == "inf");
  CHECK(ExtendedNonNegReal(0.5).str() == "0.5");
  CHECK(ExtendedNonNegReal(0.5) < ExtendedNonNegReal::infinity());
  CHECK(ExtendedNonNegReal::infinity().scaled(0.25).is_infinite());
  CHECK(ExtendedNonNegReal(0.0).scaled(3.0).value() == 0.0);
  CHECK(ExtendedNonNegReal(2.0).scaled(1.5).value() == 3.0);
  CHECK_THROWS_AS(ExtendedNonNegReal(-1.0), Error);
  CHECK_THROWS_AS(ExtendedNonNegReal(std::nan("")), Error);
  std::ostringstream os;
  os << ExtendedNonNegReal(1.25);
  CHECK(os.str() == "1.25");
}

TEST_CASE("space parameters") {
  CHECK(SpaceParams::parse("H:2").is_hardy());
  CHECK(SpaceParams::parse("H:2").p() == 2.0);
  const auto a = SpaceParams::parse("A:3:0.5");
  CHECK_FALSE(a.is_hardy());
  CHECK(a.alpha() == 0.5);
  CHECK(a.ratio() == doctest::Approx(3.0 / 2.5));
  CHECK(a.str() == "A^3_0.5");
  CHECK(SpaceParams::hardy(1.0) == SpaceParams::parse("h:1"));
  CHECK(SpaceParams::hardy(1.0) < SpaceParams::hardy(2.0));
  for (const char* bad : {"H:0", "H:-1", "A:1:-1", "A:1", "B:1", "H:x", "H:1:2", "A:inf:0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(SpaceParams::parse(bad), Error);
  }
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK(worker_count() >= 1);
  parallel_for(0, [](std::size_t) { FAIL("no tasks expected"); });
}

TEST_CASE("parallel_for nests and propagates exceptions") {
  std::vector<int> sums(8, 0);
  parallel_for(sums.size(), [&](std::size_t i) {
    std::vector<int> inner(10, 0);
    parallel_for(inner.size(), [&](std::size_t j) { inner[j] = static_cast<int>(i + j); });
    for (int v : inner) sums[i] += v;
  });
  for (std::size_t i = 0; i < sums.size(); ++i) CHECK(sums[i] == static_cast<int>(10 * i + 45));
  CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                    if (i == 17) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("error kinds") {
  const Error e(ErrorKind::Estimation, "no window");
  CHECK(e.kind() == ErrorKind::Estimation);
  CHECK(std::string(e.what()).find("no window") != std::string::npos);
}
