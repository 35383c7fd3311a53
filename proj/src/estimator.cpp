#include "hardy/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

// Index of the first exact zero, after validating the value sequence.
std::size_t validate_values(const PsiProfile& profile) {
  if (profile.size() < 2) throw Error(ErrorKind::Data, "profile needs at least two radii");
  std::size_t first_zero = profile.size();
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double v = profile.values[k];
    if (std::isnan(v) || v < 0.0) throw Error(ErrorKind::Data, "profile contains a negative or NaN psi value");
    if (v == 0.0 && first_zero == profile.size()) first_zero = k;
    if (v > 0.0 && first_zero < k)
      throw Error(ErrorKind::Data, "profile has a zero psi value followed by positive values");
  }
  return first_zero;
}

void check_reach(const PsiProfile& profile, const EstimatorOptions& opts) {
  const double reach = complement_reach(profile.spec);
  if (profile.radii.back() < opts.min_reach_factor * reach) {
    throw Error(ErrorKind::Range, "profile must extend to r_max >= " + std::to_string(opts.min_reach_factor * reach) +
                                      " (three decades beyond the complement's reach)");
  }
}

}  // namespace

const char* to_string(EstimateMethod m) noexcept {
  switch (m) {
    case EstimateMethod::LiminfSlope: return "LiminfSlope";
    case EstimateMethod::PolarShortcut: return "PolarShortcut";
    case EstimateMethod::InfinityCap: return "InfinityCap";
  }
  return "?";
}

std::optional<NumberEstimate> polar_shortcut(const DomainSpec& spec) {
  if (!is_polar_complement(spec)) return std::nullopt;
  NumberEstimate e;
  e.value = ExtendedNonNegReal(0.0);
  e.method = EstimateMethod::PolarShortcut;
  return e;
}

NumberEstimate estimate_hardy_number(const PsiProfile& profile, const EstimatorOptions& opts) {
  if (auto polar = polar_shortcut(profile.spec)) return *polar;
  const std::size_t first_zero = validate_values(profile);
  if (first_zero < profile.size()) {
    NumberEstimate e;
    e.value = ExtendedNonNegReal::infinity();
    e.method = EstimateMethod::InfinityCap;
    e.zero_tail = true;
    return e;
  }
  check_reach(profile, opts);

  const std::size_t n = profile.size();
  std::vector<double> lr(n), lpsi(n);
  for (std::size_t k = 0; k < n; ++k) {
    lr[k] = std::log10(profile.radii[k]);
    lpsi[k] = std::log10(profile.values[k]);
  }

  NumberEstimate e;
  constexpr double kSlack = 1e-9;
  for (std::size_t i = n / 2; i < n; ++i) {
    // Shortest window starting at i that spans a full decade.
    std::size_t j = i;
    while (j + 1 < n && lr[j] - lr[i] < 1.0 - kSlack) ++j;
    if (lr[j] - lr[i] < 1.0 - kSlack) break;
    std::vector<double> x(lr.begin() + static_cast<std::ptrdiff_t>(i), lr.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    std::vector<double> y(lpsi.begin() + static_cast<std::ptrdiff_t>(i), lpsi.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    e.window_slopes.push_back({profile.radii[i], profile.radii[j], -ls_slope(x, y)});
  }
  if (e.window_slopes.empty())
    throw Error(ErrorKind::Range, "upper half of the profile spans less than one decade");

  auto [lo, hi] = std::minmax_element(e.window_slopes.begin(), e.window_slopes.end(),
                                      [](const WindowSlope& a, const WindowSlope& b) { return a.slope < b.slope; });
  e.confidence = hi->slope - lo->slope;
  if (lo->slope > opts.infinity_cap) {
    e.value = ExtendedNonNegReal::infinity();
    e.method = EstimateMethod::InfinityCap;
  } else {
    e.value = ExtendedNonNegReal(std::max(0.0, lo->slope));
    e.method = EstimateMethod::LiminfSlope;
  }
  return e;
}

BergmanNumbers estimate_bergman_numbers(const NumberEstimate& hardy, const std::vector<double>& alphas) {
  BergmanNumbers out;
  out.b = hardy.value;
  for (double a : alphas) {
    if (!(a > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
    out.b_alpha[a] = hardy.value.scaled(a + 2.0);
  }
  return out;
}

PsiMoment psi_moment(const PsiProfile& profile, double p, double power) {
  if (!(p > 0.0)) throw Error(ErrorKind::Domain, "moment exponent p must be > 0");
  const std::size_t first_zero = validate_values(profile);
  const std::size_t n = profile.size();
  PsiMoment m;

  // Near the pole psi(r) = c - 2 pi log r exactly while the circle stays inside the domain.
  const double inner = distance_to_complement(profile.spec, profile.base_point);
  double csum = 0.0;
  std::size_t cnt = 0;
  for (std::size_t k = 0; k < n && profile.radii[k] < inner; ++k) {
    csum += profile.values[k] + kTwoPi * std::log(profile.radii[k]);
    ++cnt;
  }
  m.pole_model_exact = cnt > 0;
  m.pole_constant = cnt > 0 ? csum / static_cast<double>(cnt) : profile.values[0] + kTwoPi * std::log(profile.radii[0]);
  const double r0 = profile.radii[0];
  const double v0 = m.pole_constant - kTwoPi * std::log(r0);
  if (v0 > 0.0) {
    // Substituting v = c - 2 pi log r turns the integral into an upper incomplete gamma function.
    const double x0 = p * v0 / kTwoPi;
    const double a = power + 1.0;
    const double log_scale = p * std::log(r0) + x0 - std::log(kTwoPi) + a * std::log(kTwoPi / p);
    m.near = std::exp(log_scale + boost::math::lgamma(a) + std::log(boost::math::gamma_q(a, x0)));
  } else {
    m.near = std::pow(r0, p) * std::pow(profile.values[0], power) / p;
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double f0 = std::pow(profile.radii[k], p) * std::pow(profile.values[k], power);
    const double f1 = std::pow(profile.radii[k + 1], p) * std::pow(profile.values[k + 1], power);
    m.middle += 0.5 * (f0 + f1) * std::log(profile.radii[k + 1] / profile.radii[k]);
  }

  if (first_zero < n) {
    m.zero_tail = true;
    m.tail_exponent = kInf;
    m.tail = 0.0;
    return m;
  }
  const double r_max = profile.radii.back();
  std::vector<double> x, y;
  for (std::size_t k = 0; k < n; ++k) {
    if (profile.radii[k] >= r_max / 10.0 * (1.0 - 1e-12)) {
      x.push_back(std::log(profile.radii[k]));
      y.push_back(std::log(profile.values[k]));
    }
  }
  if (x.size() < 2) throw Error(ErrorKind::Range, "profile needs at least two radii in its last decade");
  m.tail_exponent = -ls_slope(x, y);
  double intercept = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) intercept += (y[i] + m.tail_exponent * x[i]) / static_cast<double>(x.size());
  const double psi_at_max = std::exp(intercept - m.tail_exponent * std::log(r_max));
  const double decay = m.tail_exponent * power - p;
  m.tail = decay > 0.0 ? std::pow(psi_at_max, power) * std::pow(r_max, p) / decay : kInf;
  return m;
}

MembershipVerdict polar_membership(const SpaceParams& space) {
  MembershipVerdict v;
  v.status = MembershipStatus::NonMember;
  v.exact = true;
  v.margin = -space.ratio();
  v.rule = "polar complement: all Hardy and Bergman numbers vanish";
  return v;
}

MembershipVerdict hardy_membership_via_psi(const PsiProfile& profile, double p, const EstimatorOptions& opts) {
  if (is_polar_complement(profile.spec)) return polar_membership(SpaceParams::hardy(p));
  const PsiMoment m = psi_moment(profile, p, 1.0);
  MembershipVerdict v;
  v.rule = "integral of r^(p-1) psi(r) dr";
  v.diagnostics = {{"near", m.near},
                   {"middle", m.middle},
                   {"tail", m.tail},
                   {"integral", m.total()},
                   {"tail_exponent", m.tail_exponent},
                   {"p", p},
                   {"slope_tol", opts.slope_tol}};
  v.margin = m.tail_exponent - p;
  if (m.zero_tail || v.margin >= opts.slope_tol) {
    v.status = MembershipStatus::Member;
  } else if (v.margin <= -opts.slope_tol) {
    v.status = MembershipStatus::NonMember;
  } else {
    v.status = MembershipStatus::Inconclusive;
  }
  return v;
}

MembershipVerdict bergman_nonmembership_via_psi(const PsiProfile& profile, double p, double alpha,
                                                const EstimatorOptions& opts) {
  if (is_polar_complement(profile.spec)) return polar_membership(SpaceParams::bergman(p, alpha));
  if (!(alpha > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
  const double k = alpha + 2.0;
  const PsiMoment m = psi_moment(profile, p, k);
  MembershipVerdict v;
  v.diagnostics = {{"near", m.near},
                   {"middle", m.middle},
                   {"tail", m.tail},
                   {"integral", m.total()},
                   {"tail_exponent", m.tail_exponent},
                   {"ratio", p / k},
                   {"slope_tol", opts.slope_tol}};
  // Compare s against p / (alpha + 2), i.e. s (alpha + 2) against p.
  v.margin = m.tail_exponent - p / k;
  if (!m.zero_tail && v.margin <= -opts.slope_tol) {
    v.status = MembershipStatus::NonMember;
    v.rule = "integral of r^(p-1) psi^(alpha+2) diverges";
    return v;
  }
  if (!m.zero_tail && v.margin < opts.slope_tol) {
    v.status = MembershipStatus::Inconclusive;
    v.rule = "tail exponent within the critical band";
    return v;
  }
  const NumberEstimate h = estimate_hardy_number(profile, opts);
  v.diagnostics["hardy_number"] = h.value.value();
  v.diagnostics["hardy_confidence"] = h.confidence;
  if (h.value.is_infinite() || p / k < h.value.value() - h.confidence - opts.slope_tol) {
    v.status = MembershipStatus::Member;
    v.rule = "p/(alpha+2) below the Hardy number, which equals b_alpha/(alpha+2)";
    v.margin = h.value.is_infinite() ? kInf : h.value.value() - h.confidence - p / k;
  } else {
    v.status = MembershipStatus::Inconclusive;
    v.rule = "integral converges; necessary condition only";
  }
  return v;
}

}  // namespace hardy
