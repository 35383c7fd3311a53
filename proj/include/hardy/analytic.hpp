#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hardy/domain.hpp"
#include "hardy/space.hpp"

namespace hardy {

/// (1 - z)^(-a), a > 0.
struct PowerMap {
  double a;
};

/// 1 / (1 - z)^2, the Riemann map of the plane slit along (-inf, 1/4].
struct KoebeSquare {};

/// 1 / ((1 - z)^a log(C / (1 - z))^b), 0 < a <= 2, b > 0, C > 2.
struct ExtremalFab {
  double a;
  double b;
  double C;

  /// (b/a + 1) arctan(pi / (2 log(C/2))); the family is univalent when this is below pi/2.
  double margin_angle() const;
  bool satisfies_margin() const;
};

/// A user-supplied holomorphic function on the unit disk.
struct CustomFunction {
  std::string name;
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> derivative;
  /// M_inf(r, f) = max over |z| = r of |f(z)|; optional.
  std::function<double(double)> max_modulus;
  bool univalent = false;
};

class AnalyticFunctionSpec {
 public:
  using Kind = std::variant<PowerMap, KoebeSquare, ExtremalFab, CustomFunction>;

  static AnalyticFunctionSpec power_map(double a);
  static AnalyticFunctionSpec koebe_square();
  /// Validates the parameter ranges and the margin inequality.
  static AnalyticFunctionSpec extremal(const ExtremalFab& fab);
  static AnalyticFunctionSpec custom(CustomFunction f);
  /// f(z) = z.
  static AnalyticFunctionSpec identity();
  /// "power:a", "koebe2", "identity", "fab:a:b" (C from make_extremal_map) or "fab:a:b:C".
  static AnalyticFunctionSpec parse(const std::string& text);

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  Complex value(Complex z) const;
  Complex derivative(Complex z) const;
  /// log|f(z)| and log|f'(z)| evaluated without forming the (possibly huge) values.
  double log_abs(Complex z) const;
  double log_abs_derivative(Complex z) const;

  bool is_univalent() const noexcept;
  /// M_inf(r, f), when known in closed form or supplied.
  std::optional<double> max_modulus(double r) const;

 private:
  explicit AnalyticFunctionSpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Integrand (1 - r)^s log(C / (1 - r))^(-t) on [0, 1).
struct LogPowerIntegralForm {
  double s;
  double t;
  double C;
};

enum class Convergence { Converges, Diverges };

/// Exact: converges iff s > -1, or s = -1 and t > 1 (equalities within 1e-12).
/// Throws Error(Domain) when C <= 2.
Convergence classify_log_power_integral(const LogPowerIntegralForm& form);

struct LpSettings {
  /// Truncation depths 1 - r for the partial integrals.
  std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double rel_tol = 1e-9;
  /// Power growth of the partial integrals in 1/delta above this exponent means divergence.
  double growth_exponent = 0.05;
  /// Successive increments shrinking at least this fast mean convergence.
  double decay_ratio = 0.8;
};

/// Integral over |z| < r_max of |g|^(p-2) |g'|^2 log(1/|z|)^weight_power dA, where g = f or
/// g = f - f(0) when centered is set. r_max = 1 integrates over the whole disk.
double littlewood_paley_integral(const AnalyticFunctionSpec& f, double p, double weight_power, bool centered,
                                 double r_max = 1.0, double rel_tol = 1e-9);

/// Partial Littlewood-Paley integrals at each delta of the settings (r_max = 1 - delta).
std::vector<double> littlewood_paley_partials(const AnalyticFunctionSpec& f, double p, double weight_power,
                                              bool centered, const LpSettings& settings);

/// Hardy membership by the area-integral criterion with weight log(1/|z|).
MembershipVerdict lp_hardy_membership(const AnalyticFunctionSpec& f, double p, const LpSettings& settings = {});

/// Weighted Bergman membership by the area-integral criterion with weight log(1/|z|)^(alpha+2),
/// applied to f - f(0).
MembershipVerdict lp_bergman_membership(const AnalyticFunctionSpec& f, double p, double alpha,
                                        const LpSettings& settings = {});

/// Membership of a conformal map in A^p_alpha from the growth of M_inf(r, f): exact for the
/// built-in families, numeric (delta sweep) for univalent custom functions.
/// Throws Error(Precondition) for non-univalent input.
MembershipVerdict bgp_membership(const AnalyticFunctionSpec& f, double p, double alpha,
                                 const LpSettings& settings = {});

/// C = 2 exp(pi / (2 tan(pi / (4 (b/a + 1))))), which puts the margin angle at exactly pi/4.
ExtremalFab make_extremal_map(double a, double b);

struct UnivalenceReport {
  bool passed = false;
  std::size_t samples = 0;
  double min_real_derivative = 0.0;  // minimum of Re F'(w) over the samples
  bool reflection_ok = false;
};

/// Samples Re F'(w) > 0 on Re w > 1/2 for F(w) = w / log(Cw)^beta, beta = b/a, the
/// half-plane form of f_{1,b/a}; also checks conj(F(w)) = F(conj(w)).
UnivalenceReport check_univalence_sampled(const ExtremalFab& fab, std::size_t samples);

/// Exact A^p_alpha membership of f_{a,b}: member iff the integral with s = alpha + 1 - a p,
/// t = b p converges.
MembershipVerdict classify_extremal_membership(const ExtremalFab& fab, double p, double alpha);

}  // namespace hardy
