#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hardy/green.hpp"

namespace hardy {

struct QuadSettings {
  /// Relative tolerance of the adaptive Gauss-Kronrod panels (closed-form backends).
  double rel_tol = 1e-10;
  unsigned max_depth = 20;
  /// Approximate node budget per circle for Monte Carlo backends.
  unsigned wos_nodes = 256;
};

struct PsiValue {
  double value = 0.0;
  double err = 0.0;
};

/// Integral of g(base + r e^{i theta}, base) over theta in [0, 2pi].
///
/// The circle is split where it meets the boundary so every panel is either entirely inside
/// or entirely outside the domain; outside panels contribute exactly 0. Closed-form backends
/// use adaptive Gauss-Kronrod per panel, Monte Carlo backends a fixed composite Gauss-Legendre
/// rule whose error term is three times the aggregated standard error.
///
/// Throws Error(PoleProximity) for r < 1e-12 times the distance from the base point to the
/// complement.
PsiValue psi_at(const GreenEvaluator& evaluator, double r, const QuadSettings& quad = {});

/// Integrals of g^k over the same circle for each exponent k (k = 1 gives psi).
std::vector<PsiValue> circle_power_integrals(const GreenEvaluator& evaluator, double r,
                                             const std::vector<double>& exponents,
                                             const QuadSettings& quad = {});

struct PsiProfile {
  DomainSpec spec;
  Complex base_point;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> quad_errors;
  std::string engine;

  std::size_t size() const noexcept { return radii.size(); }
};

/// Log-spaced radii from r_min to r_max inclusive, with points_per_decade points per decade.
std::vector<double> log_grid(double r_min, double r_max, unsigned points_per_decade);

/// Throws Error(Precondition) unless 0 < r_min < r_max and points_per_decade >= 4.
PsiProfile build_profile(const GreenEvaluator& evaluator, double r_min, double r_max, unsigned points_per_decade,
                         const QuadSettings& quad = {});

/// Index pairs (k, k+1) where values[k+1] exceeds values[k] by more than both error bars.
std::vector<std::pair<std::size_t, std::size_t>> check_monotone(const PsiProfile& profile);

struct PoleAsymptoteReport {
  bool bounded = false;
  double constant = 0.0;      // mean of psi(r) + 2 pi log r
  double trend_slope = 0.0;   // slope of |psi(r) + 2 pi log r| against log r
  std::vector<double> offsets;
};

/// Checks that psi(r) + 2 pi log r stays bounded (no trend beyond +-0.05 per unit log r).
/// Radii must lie in (0, d/2), d the distance from the base point to the complement.
PoleAsymptoteReport check_pole_asymptote(const GreenEvaluator& evaluator, const std::vector<double>& radii,
                                         const QuadSettings& quad = {});

struct JensenSides {
  double lhs = 0.0;  // (psi / 2pi)^(alpha + 2)
  double rhs = 0.0;  // (1 / 2pi) * integral of g^(alpha + 2)
  double err = 0.0;  // combined numerical error on rhs - lhs
  bool holds() const noexcept { return lhs <= rhs + err; }
};

JensenSides jensen_sides(const GreenEvaluator& evaluator, double r, double alpha, const QuadSettings& quad = {});

/// One entry per alpha, all from a single pass over the circle.
std::vector<JensenSides> jensen_sides(const GreenEvaluator& evaluator, double r, const std::vector<double>& alphas,
                                      const QuadSettings& quad = {});

/// CSV with header "r,psi,err", one row per radius, 17 significant digits, '\n' line endings.
void write_profile_csv(std::ostream& os, const PsiProfile& profile);

}  // namespace hardy
