#include "hardy/analytic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_double(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidSpec, "cannot parse number '" + s + "' in '" + ctx + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out{""};
  for (char c : s) {
    if (c == sep) {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  return out;
}

// log(C / (1 - z)) for z in the unit disk; lies in the half-strip Re > log(C/2), |Im| < pi/2.
Complex extremal_log(const ExtremalFab& f, Complex z) { return std::log(f.C) - std::log(1.0 - z); }

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule;
}

MembershipVerdict exact_verdict(const LogPowerIntegralForm& form, const char* rule) {
  MembershipVerdict v;
  v.exact = true;
  v.rule = rule;
  v.status = classify_log_power_integral(form) == Convergence::Converges ? MembershipStatus::Member
                                                                          : MembershipStatus::NonMember;
  v.margin = std::abs(form.s + 1.0) > kTol ? form.s + 1.0 : form.t - 1.0;
  v.diagnostics = {{"s", form.s}, {"t", form.t}};
  if (form.t != 0.0) v.diagnostics["C"] = form.C;
  return v;
}

// Verdict from partial integrals I(delta_k): increments growing like a power of 1/delta mean
// divergence; geometrically shrinking increments mean convergence.
MembershipVerdict sweep_verdict(const std::vector<double>& partials, const std::vector<double>& deltas,
                                const LpSettings& s, const std::string& rule) {
  MembershipVerdict v;
  v.rule = rule;
  for (std::size_t k = 0; k < partials.size(); ++k) {
    std::ostringstream key;
    key.imbue(std::locale::classic());
    key << "partial_delta_" << deltas[k];
    v.diagnostics[key.str()] = partials[k];
  }
  for (double x : partials) {
    if (std::isnan(x)) throw Error(ErrorKind::Data, "partial integral is NaN");
  }
  if (partials.size() < 4) throw Error(ErrorKind::Precondition, "delta sweep needs at least four depths");
  const std::size_t n = partials.size();
  std::vector<double> inc;
  for (std::size_t k = 0; k + 1 < n; ++k) inc.push_back(partials[k + 1] - partials[k]);
  // Growth exponent per decade of 1/delta, from the last two increment ratios.
  double gamma_sum = 0.0;
  bool decaying = true;
  bool growing = true;
  int used = 0;
  for (std::size_t k = inc.size() - 2; k + 1 < inc.size(); ++k) {
    const double a = inc[k], b = inc[k + 1];
    const double decades = std::log10(deltas[k + 1] / deltas[k + 2]);
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      decaying = decaying && std::isfinite(b) && std::abs(b) <= 1e-15 * std::max(1.0, std::abs(partials.back()));
      growing = growing && std::isinf(b);
      continue;
    }
    const double ratio = b / a;
    const double g = ratio > 0.0 ? std::log10(ratio) / decades : -std::numeric_limits<double>::infinity();
    gamma_sum += g;
    ++used;
    decaying = decaying && ratio <= std::pow(s.decay_ratio, decades);
    growing = growing && g > s.growth_exponent;
  }
  const double gamma = used > 0 ? gamma_sum / used : 0.0;
  v.diagnostics["growth_exponent"] = gamma;
  v.margin = -gamma;
  if (growing) {
    v.status = MembershipStatus::NonMember;
  } else if (decaying) {
    v.status = MembershipStatus::Member;
  } else {
    v.status = MembershipStatus::Inconclusive;
  }
  return v;
}

}  // namespace

double ExtremalFab::margin_angle() const { return (b / a + 1.0) * std::atan(kPi / (2.0 * std::log(C / 2.0))); }

bool ExtremalFab::satisfies_margin() const { return C > 2.0 && margin_angle() <= kPi / 4.0 + 1e-12; }

AnalyticFunctionSpec AnalyticFunctionSpec::power_map(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::InvalidSpec, "power map needs a > 0");
  return AnalyticFunctionSpec(PowerMap{a});
}

AnalyticFunctionSpec AnalyticFunctionSpec::koebe_square() { return AnalyticFunctionSpec(KoebeSquare{}); }

AnalyticFunctionSpec AnalyticFunctionSpec::extremal(const ExtremalFab& fab) {
  if (!(fab.a > 0.0 && fab.a <= 2.0)) throw Error(ErrorKind::InvalidSpec, "extremal map needs 0 < a <= 2");
  if (!(fab.b > 0.0) || !std::isfinite(fab.b)) throw Error(ErrorKind::InvalidSpec, "extremal map needs b > 0");
  if (!(fab.C > 2.0) || !std::isfinite(fab.C)) throw Error(ErrorKind::InvalidSpec, "extremal map needs C > 2");
  if (!fab.satisfies_margin())
    throw Error(ErrorKind::InvalidSpec, "extremal map: (b/a + 1) M(C) exceeds pi/4; increase C");
  return AnalyticFunctionSpec(fab);
}

AnalyticFunctionSpec AnalyticFunctionSpec::custom(CustomFunction f) {
  if (!f.value || !f.derivative) throw Error(ErrorKind::InvalidSpec, "custom function needs f and f'");
  return AnalyticFunctionSpec(std::move(f));
}

AnalyticFunctionSpec AnalyticFunctionSpec::identity() {
  return custom({"identity", [](Complex z) { return z; }, [](Complex) { return Complex(1.0); },
                 [](double r) { return r; }, true});
}

AnalyticFunctionSpec AnalyticFunctionSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& head = parts[0];
  if (head == "power" && parts.size() == 2) return power_map(parse_double(parts[1], text));
  if ((head == "koebe2" || head == "koebe_square") && parts.size() == 1) return koebe_square();
  if (head == "identity" && parts.size() == 1) return identity();
  if (head == "fab" && parts.size() == 3) {
    return extremal(make_extremal_map(parse_double(parts[1], text), parse_double(parts[2], text)));
  }
  if (head == "fab" && parts.size() == 4) {
    return extremal({parse_double(parts[1], text), parse_double(parts[2], text), parse_double(parts[3], text)});
  }
  throw Error(ErrorKind::InvalidSpec,
              "function must be power:a, koebe2, identity, fab:a:b or fab:a:b:C (got '" + text + "')");
}

std::string AnalyticFunctionSpec::name() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  std::visit(Overloaded{
                 [&](const PowerMap& m) { os << "(1-z)^-" << m.a; },
                 [&](const KoebeSquare&) { os << "1/(1-z)^2"; },
                 [&](const ExtremalFab& f) { os << "f_{" << f.a << "," << f.b << "} (C=" << f.C << ")"; },
                 [&](const CustomFunction& c) { os << c.name; },
             },
             kind_);
  return os.str();
}

Complex AnalyticFunctionSpec::value(Complex z) const {
  return std::visit(Overloaded{
                        [&](const PowerMap& m) { return std::exp(-m.a * std::log(1.0 - z)); },
                        [&](const KoebeSquare&) { return 1.0 / ((1.0 - z) * (1.0 - z)); },
                        [&](const ExtremalFab& f) {
                          return std::exp(-f.a * std::log(1.0 - z) - f.b * std::log(extremal_log(f, z)));
                        },
                        [&](const CustomFunction& c) { return c.value(z); },
                    },
                    kind_);
}

Complex AnalyticFunctionSpec::derivative(Complex z) const {
  return std::visit(Overloaded{
                        [&](const PowerMap& m) { return m.a * std::exp(-(m.a + 1.0) * std::log(1.0 - z)); },
                        [&](const KoebeSquare&) { return 2.0 / ((1.0 - z) * (1.0 - z) * (1.0 - z)); },
                        [&](const ExtremalFab& f) {
                          // f'/f = (a - b/L) / (1 - z), L = log(C / (1 - z)).
                          const Complex L = extremal_log(f, z);
                          return value(z) * (f.a - f.b / L) / (1.0 - z);
                        },
                        [&](const CustomFunction& c) { return c.derivative(z); },
                    },
                    kind_);
}

double AnalyticFunctionSpec::log_abs(Complex z) const {
  return std::visit(Overloaded{
                        [&](const PowerMap& m) { return -m.a * std::log(std::abs(1.0 - z)); },
                        [&](const KoebeSquare&) { return -2.0 * std::log(std::abs(1.0 - z)); },
                        [&](const ExtremalFab& f) {
                          return -f.a * std::log(std::abs(1.0 - z)) - f.b * std::log(std::abs(extremal_log(f, z)));
                        },
                        [&](const CustomFunction& c) { return std::log(std::abs(c.value(z))); },
                    },
                    kind_);
}

double AnalyticFunctionSpec::log_abs_derivative(Complex z) const {
  return std::visit(Overloaded{
                        [&](const PowerMap& m) { return std::log(m.a) - (m.a + 1.0) * std::log(std::abs(1.0 - z)); },
                        [&](const KoebeSquare&) { return std::log(2.0) - 3.0 * std::log(std::abs(1.0 - z)); },
                        [&](const ExtremalFab& f) {
                          const Complex L = extremal_log(f, z);
                          return log_abs(z) + std::log(std::abs(f.a - f.b / L)) - std::log(std::abs(1.0 - z));
                        },
                        [&](const CustomFunction& c) { return std::log(std::abs(c.derivative(z))); },
                    },
                    kind_);
}

bool AnalyticFunctionSpec::is_univalent() const noexcept {
  return std::visit(Overloaded{
                        [](const PowerMap& m) { return m.a <= 2.0; },
                        [](const KoebeSquare&) { return true; },
                        [](const ExtremalFab&) { return true; },
                        [](const CustomFunction& c) { return c.univalent; },
                    },
                    kind_);
}

std::optional<double> AnalyticFunctionSpec::max_modulus(double r) const {
  if (const auto* c = std::get_if<CustomFunction>(&kind_)) {
    if (!c->max_modulus) return std::nullopt;
    return c->max_modulus(r);
  }
  // The built-in families are positive and increasing on [0, 1) and peak there.
  return std::abs(value(Complex(r, 0.0)));
}

Convergence classify_log_power_integral(const LogPowerIntegralForm& form) {
  if (!(form.C > 2.0)) throw Error(ErrorKind::Domain, "log-power integral needs C > 2");
  if (form.s > -1.0 + kTol) return Convergence::Converges;
  if (form.s < -1.0 - kTol) return Convergence::Diverges;
  return form.t > 1.0 + kTol ? Convergence::Converges : Convergence::Diverges;
}

// ---------------------------------------------------------------------------------------------
// Littlewood-Paley area integrals

namespace {

struct AreaIntegrand {
  const AnalyticFunctionSpec& f;
  double p;
  double weight_power;
  bool centered;
  Complex f0;

  // f(z) - f(0); near the origin as z times the mean of f' along [0, z], which avoids cancellation.
  Complex centered_value(Complex z) const {
    if (std::abs(z) >= 0.25) return f.value(z) - f0;
    using Rule = boost::math::quadrature::gauss<double, 10>;
    Complex mean = 0.0;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t0 = 0.5 * (1.0 - x[i]), t1 = 0.5 * (1.0 + x[i]);
      mean += 0.5 * w[i] * (f.derivative(t0 * z) + (x[i] == 0.0 ? Complex(0.0) : f.derivative(t1 * z)));
    }
    return z * mean;
  }

  double at(Complex z, double log_prefactor) const {
    double log_g;
    if (centered) {
      log_g = std::log(std::abs(centered_value(z)));
    } else {
      log_g = f.log_abs(z);
    }
    const double log_gp = f.log_abs_derivative(z);
    if (std::isnan(log_g) || std::isnan(log_gp)) throw Error(ErrorKind::Data, "function evaluation produced NaN");
    if (std::isinf(log_g) && log_g < 0.0) {
      // Isolated zero: a null set for the area measure.
      return p == 2.0 ? std::exp(2.0 * log_gp + log_prefactor) : 0.0;
    }
    return std::exp((p - 2.0) * log_g + 2.0 * log_gp + log_prefactor);
  }

  // Integral over the circle of radius r, times r log(1/r)^k.
  double ring(double r, double rel_tol) const {
    if (!(r > 0.0) || r >= 1.0) return 0.0;
    auto& ts = tanh_sinh_rule();
    // The weight goes inside the exponential so that tiny radii cannot overflow the integrand.
    const double log_inv = r > 0.5 ? -std::log1p(-(1.0 - r)) : -std::log(r);
    const double log_prefactor = std::log(r) + weight_power * std::log(log_inv);
    auto g = [&](double theta) { return at(std::polar(r, theta), log_prefactor); };
    return ts.integrate(g, 0.0, kPi, rel_tol) + ts.integrate(g, -kPi, 0.0, rel_tol);
  }
};

double integrate_rings(const AreaIntegrand& in, double a, double b, double rel_tol, bool singular_ends) {
  if (b <= a) return 0.0;
  auto h = [&](double r) { return in.ring(r, rel_tol); };
  if (singular_ends) return tanh_sinh_rule().integrate(h, a, b, rel_tol);
  // Annuli hugging the unit circle: integrate in u = log(1 - r), where the rings vary smoothly.
  auto hu = [&](double u) {
    const double d = std::exp(u);
    return in.ring(1.0 - d, rel_tol) * d;
  };
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(hu, std::log1p(-b), std::log1p(-a), 8,
                                                                       10.0 * rel_tol);
}

AreaIntegrand make_integrand(const AnalyticFunctionSpec& f, double p, double weight_power, bool centered) {
  if (!(p > 0.0)) throw Error(ErrorKind::Domain, "p must be > 0");
  return {f, p, weight_power, centered, centered ? f.value(Complex(0.0)) : Complex(0.0)};
}

}  // namespace

double littlewood_paley_integral(const AnalyticFunctionSpec& f, double p, double weight_power, bool centered,
                                 double r_max, double rel_tol) {
  if (!(r_max > 0.0 && r_max <= 1.0)) throw Error(ErrorKind::Domain, "r_max must lie in (0, 1]");
  const AreaIntegrand in = make_integrand(f, p, weight_power, centered);
  const double split_at = std::min(0.5, r_max);
  double total = integrate_rings(in, 0.0, split_at, rel_tol, true);
  total += integrate_rings(in, split_at, r_max, rel_tol, r_max == 1.0);
  return total;
}

std::vector<double> littlewood_paley_partials(const AnalyticFunctionSpec& f, double p, double weight_power,
                                              bool centered, const LpSettings& settings) {
  const auto& d = settings.deltas;
  if (d.empty() || !std::is_sorted(d.rbegin(), d.rend()) || d.front() >= 0.5 || d.back() <= 0.0)
    throw Error(ErrorKind::Precondition, "deltas must decrease within (0, 0.5)");
  const AreaIntegrand in = make_integrand(f, p, weight_power, centered);
  std::vector<double> out;
  double acc = integrate_rings(in, 0.0, 0.5, settings.rel_tol, true);
  acc += integrate_rings(in, 0.5, 1.0 - d.front(), settings.rel_tol, false);
  out.push_back(acc);
  for (std::size_t k = 1; k < d.size(); ++k) {
    acc += integrate_rings(in, 1.0 - d[k - 1], 1.0 - d[k], settings.rel_tol, false);
    out.push_back(acc);
  }
  return out;
}

MembershipVerdict lp_hardy_membership(const AnalyticFunctionSpec& f, double p, const LpSettings& settings) {
  const auto partials = littlewood_paley_partials(f, p, 1.0, false, settings);
  auto v = sweep_verdict(partials, settings.deltas, settings, "area integral of |f|^(p-2)|f'|^2 log(1/|z|)");
  v.diagnostics["p"] = p;
  return v;
}

MembershipVerdict lp_bergman_membership(const AnalyticFunctionSpec& f, double p, double alpha,
                                        const LpSettings& settings) {
  if (!(alpha > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
  const auto partials = littlewood_paley_partials(f, p, alpha + 2.0, true, settings);
  auto v = sweep_verdict(partials, settings.deltas, settings,
                         "area integral of |f-f(0)|^(p-2)|f'|^2 log(1/|z|)^(alpha+2)");
  v.diagnostics["p"] = p;
  v.diagnostics["alpha"] = alpha;
  return v;
}

MembershipVerdict bgp_membership(const AnalyticFunctionSpec& f, double p, double alpha, const LpSettings& settings) {
  if (!(p > 0.0)) throw Error(ErrorKind::Domain, "p must be > 0");
  if (!(alpha > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
  if (!f.is_univalent()) throw Error(ErrorKind::Precondition, "maximum-modulus criterion needs a univalent map");
  constexpr const char* rule = "integral of (1-r)^(alpha+1) M_inf(r,f)^p dr";
  return std::visit(
      Overloaded{
          [&](const PowerMap& m) { return exact_verdict({alpha + 1.0 - m.a * p, 0.0, 3.0}, rule); },
          [&](const KoebeSquare&) { return exact_verdict({alpha + 1.0 - 2.0 * p, 0.0, 3.0}, rule); },
          [&](const ExtremalFab& fab) { return exact_verdict({alpha + 1.0 - fab.a * p, fab.b * p, fab.C}, rule); },
          [&](const CustomFunction& c) {
            if (!c.max_modulus) throw Error(ErrorKind::Unsupported, "custom function lacks M_inf(r, f)");
            auto h = [&](double r) { return std::pow(1.0 - r, alpha + 1.0) * std::pow(c.max_modulus(r), p); };
            std::vector<double> partials;
            double acc = tanh_sinh_rule().integrate(h, 0.0, 1.0 - settings.deltas.front(), settings.rel_tol);
            partials.push_back(acc);
            for (std::size_t k = 1; k < settings.deltas.size(); ++k) {
              acc += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
                  h, 1.0 - settings.deltas[k - 1], 1.0 - settings.deltas[k], 20, settings.rel_tol);
              partials.push_back(acc);
            }
            return sweep_verdict(partials, settings.deltas, settings, rule);
          },
      },
      f.kind());
}

ExtremalFab make_extremal_map(double a, double b) {
  if (!(a > 0.0 && a <= 2.0)) throw Error(ErrorKind::Domain, "extremal map needs 0 < a <= 2");
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorKind::Domain, "extremal map needs b > 0");
  const double log_half_c = kPi / (2.0 * std::tan(kPi / (4.0 * (b / a + 1.0))));
  return {a, b, 2.0 * std::exp(log_half_c)};
}

UnivalenceReport check_univalence_sampled(const ExtremalFab& fab, std::size_t samples) {
  const double beta = fab.b / fab.a;
  auto F = [&](Complex w) { return w * std::exp(-beta * std::log(std::log(fab.C * w))); };
  auto dF = [&](Complex w) {
    const Complex L = std::log(fab.C * w);
    return (L - beta) * std::exp(-(beta + 1.0) * std::log(L));
  };
  // Halton points in bases 2 and 3.
  auto halton = [](std::size_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    return r;
  };
  UnivalenceReport rep;
  rep.samples = samples;
  rep.min_real_derivative = std::numeric_limits<double>::infinity();
  rep.reflection_ok = true;
  for (std::size_t i = 1; i <= samples; ++i) {
    const double rho = std::pow(10.0, -6.0 + 12.0 * halton(i, 2));
    const double phi = (halton(i, 3) - 0.5) * kPi;
    const Complex w = 0.5 + std::polar(rho, phi);
    rep.min_real_derivative = std::min(rep.min_real_derivative, dF(w).real());
    const Complex a = std::conj(F(w)), b = F(std::conj(w));
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) rep.reflection_ok = false;
  }
  rep.passed = samples > 0 && rep.min_real_derivative > 0.0 && rep.reflection_ok;
  return rep;
}

MembershipVerdict classify_extremal_membership(const ExtremalFab& fab, double p, double alpha) {
  if (!(p > 0.0)) throw Error(ErrorKind::Domain, "p must be > 0");
  if (!(alpha > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
  return exact_verdict({alpha + 1.0 - fab.a * p, fab.b * p, fab.C}, "log-power integral classification");
}

}  // namespace hardy
