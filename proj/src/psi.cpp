#include "hardy/psi.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Panel {
  double begin;
  double end;
};

// Panels of [0, 2pi) between consecutive boundary crossings that lie inside the domain.
std::vector<Panel> inside_panels(const DomainSpec& spec, Complex center, double r) {
  std::vector<double> cuts = boundary_crossings(spec, center, r);
  std::vector<Panel> all;
  if (cuts.empty()) {
    all.push_back({0.0, kTwoPi});
  } else {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) all.push_back({cuts[i], cuts[i + 1]});
    all.push_back({cuts.back(), cuts.front() + kTwoPi});
  }
  std::vector<Panel> inside;
  for (const Panel& p : all) {
    if (p.end - p.begin <= 0.0) continue;
    const double mid = 0.5 * (p.begin + p.end);
    if (contains(spec, center + std::polar(r, mid))) inside.push_back(p);
  }
  return inside;
}

std::uint64_t node_seed(std::uint64_t seed, std::uint64_t node) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (node + 0x51ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_radius(const GreenEvaluator& ev, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::Domain, "psi: radius must be positive and finite");
  const double scale = distance_to_complement(ev.spec(), ev.spec().base_point());
  if (r < 1e-12 * scale) throw Error(ErrorKind::PoleProximity, "psi: radius too close to the pole");
}

std::vector<PsiValue> closed_form_integrals(const GreenEvaluator& ev, double r, const std::vector<double>& exponents,
                                            const QuadSettings& quad) {
  using boost::math::quadrature::gauss_kronrod;
  const Complex base = ev.spec().base_point();
  const auto panels = inside_panels(ev.spec(), base, r);
  std::vector<PsiValue> out(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    const double k = exponents[e];
    for (const Panel& p : panels) {
      double err = 0.0;
      auto f = [&](double theta) {
        const double g = ev.eval(base + std::polar(r, theta), base).value;
        return k == 1.0 ? g : std::pow(g, k);
      };
      out[e].value += gauss_kronrod<double, 21>::integrate(f, p.begin, p.end, quad.max_depth, quad.rel_tol, &err);
      out[e].err += err;
    }
  }
  return out;
}

std::vector<PsiValue> monte_carlo_integrals(const GreenEvaluator& ev, double r, const std::vector<double>& exponents,
                                            const QuadSettings& quad) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const Complex base = ev.spec().base_point();
  const auto panels = inside_panels(ev.spec(), base, r);
  const std::uint64_t seed = std::get<WosBackend>(ev.backend()).config.seed;

  struct Node {
    double theta;
    double weight;
  };
  std::vector<Node> nodes;
  const double per_panel = std::max(1.0, quad.wos_nodes / 16.0);
  for (const Panel& p : panels) {
    const auto subpanels =
        static_cast<std::size_t>(std::max(1.0, std::ceil(per_panel * (p.end - p.begin) / kTwoPi)));
    const double h = (p.end - p.begin) / static_cast<double>(subpanels);
    for (std::size_t s = 0; s < subpanels; ++s) {
      const double mid = p.begin + (static_cast<double>(s) + 0.5) * h;
      const auto& x = Rule::abscissa();
      const auto& w = Rule::weights();
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double half = 0.5 * h;
        if (x[i] == 0.0) {
          nodes.push_back({mid, w[i] * half});
        } else {
          nodes.push_back({mid - half * x[i], w[i] * half});
          nodes.push_back({mid + half * x[i], w[i] * half});
        }
      }
    }
  }

  std::vector<GreenValue> values(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    values[i] = ev.eval(base + std::polar(r, nodes[i].theta), base, node_seed(seed, i));
  });

  std::vector<PsiValue> out(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    const double k = exponents[e];
    double var = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double g = std::max(0.0, values[i].value);
      out[e].value += nodes[i].weight * (k == 1.0 ? g : std::pow(g, k));
      // Delta method: d(g^k) = k g^(k-1) dg.
      const double slope = k == 1.0 ? 1.0 : k * std::pow(g, k - 1.0);
      const double s = nodes[i].weight * slope * values[i].stderr_;
      var += s * s;
    }
    out[e].err = 3.0 * std::sqrt(var);
  }
  return out;
}

}  // namespace

std::vector<PsiValue> circle_power_integrals(const GreenEvaluator& evaluator, double r,
                                             const std::vector<double>& exponents, const QuadSettings& quad) {
  check_radius(evaluator, r);
  if (evaluator.is_monte_carlo()) return monte_carlo_integrals(evaluator, r, exponents, quad);
  return closed_form_integrals(evaluator, r, exponents, quad);
}

PsiValue psi_at(const GreenEvaluator& evaluator, double r, const QuadSettings& quad) {
  return circle_power_integrals(evaluator, r, {1.0}, quad).front();
}

std::vector<double> log_grid(double r_min, double r_max, unsigned points_per_decade) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw Error(ErrorKind::Precondition, "grid: need 0 < r_min < r_max");
  if (points_per_decade < 4) throw Error(ErrorKind::Precondition, "grid: need at least 4 points per decade");
  const double decades = std::log10(r_max / r_min);
  const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil(decades * points_per_decade - 1e-9)));
  std::vector<double> radii(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    radii[k] = r_min * std::pow(r_max / r_min, static_cast<double>(k) / static_cast<double>(intervals));
  }
  radii.front() = r_min;
  radii.back() = r_max;
  return radii;
}

PsiProfile build_profile(const GreenEvaluator& evaluator, double r_min, double r_max, unsigned points_per_decade,
                         const QuadSettings& quad) {
  PsiProfile profile{evaluator.spec(), evaluator.spec().base_point(), log_grid(r_min, r_max, points_per_decade), {}, {},
                     evaluator.backend_name()};
  const std::size_t n = profile.radii.size();
  profile.values.resize(n);
  profile.quad_errors.resize(n);
  // Monte Carlo circles parallelise internally over their nodes.
  auto one = [&](std::size_t k) {
    const PsiValue v = psi_at(evaluator, profile.radii[k], quad);
    profile.values[k] = v.value;
    profile.quad_errors[k] = v.err;
  };
  if (evaluator.is_monte_carlo()) {
    for (std::size_t k = 0; k < n; ++k) one(k);
  } else {
    parallel_for(n, one);
  }
  return profile;
}

std::vector<std::pair<std::size_t, std::size_t>> check_monotone(const PsiProfile& profile) {
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  for (std::size_t k = 0; k + 1 < profile.size(); ++k) {
    if (profile.values[k + 1] > profile.values[k] + profile.quad_errors[k] + profile.quad_errors[k + 1])
      violations.emplace_back(k, k + 1);
  }
  return violations;
}

PoleAsymptoteReport check_pole_asymptote(const GreenEvaluator& evaluator, const std::vector<double>& radii,
                                         const QuadSettings& quad) {
  const double d = distance_to_complement(evaluator.spec(), evaluator.spec().base_point());
  if (radii.size() < 2) throw Error(ErrorKind::Precondition, "pole asymptote: need at least two radii");
  for (double r : radii) {
    if (!(r > 0.0) || !(r < 0.5 * d))
      throw Error(ErrorKind::Precondition, "pole asymptote: radii must lie in (0, dist/2)");
  }
  PoleAsymptoteReport report;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : radii) {
    const double offset = psi_at(evaluator, r, quad).value + kTwoPi * std::log(r);
    report.offsets.push_back(offset);
    const double x = std::log(r), y = std::abs(offset);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(radii.size());
  report.constant = 0.0;
  for (double o : report.offsets) report.constant += o / n;
  const double denom = n * sxx - sx * sx;
  report.trend_slope = denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  report.bounded = std::all_of(report.offsets.begin(), report.offsets.end(), [](double o) { return std::isfinite(o); }) &&
                   std::abs(report.trend_slope) <= 0.05;
  return report;
}

JensenSides jensen_sides(const GreenEvaluator& evaluator, double r, double alpha, const QuadSettings& quad) {
  return jensen_sides(evaluator, r, std::vector<double>{alpha}, quad).front();
}

std::vector<JensenSides> jensen_sides(const GreenEvaluator& evaluator, double r, const std::vector<double>& alphas,
                                      const QuadSettings& quad) {
  std::vector<double> exponents{1.0};
  for (double alpha : alphas) {
    if (!(alpha > -1.0)) throw Error(ErrorKind::Domain, "jensen: alpha must be > -1");
    exponents.push_back(alpha + 2.0);
  }
  const auto v = circle_power_integrals(evaluator, r, exponents, quad);
  const double mean = std::max(0.0, v[0].value / kTwoPi);
  std::vector<JensenSides> out;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double k = exponents[i];
    JensenSides s;
    s.lhs = std::pow(mean, k);
    s.rhs = v[i].value / kTwoPi;
    // Propagate the psi error through the power on the left-hand side.
    const double lhs_err = k * std::pow(mean, k - 1.0) * v[0].err / kTwoPi;
    s.err = lhs_err + v[i].err / kTwoPi + 1e-12 * (std::abs(s.lhs) + std::abs(s.rhs));
    out.push_back(s);
  }
  return out;
}

void write_profile_csv(std::ostream& os, const PsiProfile& profile) {
  const auto old_locale = os.imbue(std::locale::classic());
  const auto old_precision = os.precision(17);
  os << "r,psi,err\n";
  for (std::size_t k = 0; k < profile.size(); ++k) {
    os << profile.radii[k] << ',' << profile.values[k] << ',' << profile.quad_errors[k] << '\n';
  }
  os.precision(old_precision);
  os.imbue(old_locale);
}

}  // namespace hardy
