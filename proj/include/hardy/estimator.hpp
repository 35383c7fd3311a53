#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hardy/extended.hpp"
#include "hardy/psi.hpp"
#include "hardy/space.hpp"

namespace hardy {

struct EstimatorOptions {
  /// Slopes above this are reported as +inf.
  double infinity_cap = 50.0;
  /// Half-width of the undecided band around a critical exponent.
  double slope_tol = 0.05;
  /// The profile must reach r_max >= min_reach_factor * complement_reach(spec).
  double min_reach_factor = 1e3;
};

enum class EstimateMethod { LiminfSlope, PolarShortcut, InfinityCap };

const char* to_string(EstimateMethod m) noexcept;

struct WindowSlope {
  double r_lo;
  double r_hi;
  double slope;
};

struct NumberEstimate {
  ExtendedNonNegReal value;
  std::vector<WindowSlope> window_slopes;
  /// max - min of the tail-window slopes; 0 for shortcut results.
  double confidence = 0.0;
  EstimateMethod method = EstimateMethod::LiminfSlope;
  /// psi vanishes identically on the tail of the grid.
  bool zero_tail = false;
};

/// Exact 0 for domains whose complement is polar, nullopt otherwise.
std::optional<NumberEstimate> polar_shortcut(const DomainSpec& spec);

/// Hardy number from the decay of psi: the minimum over one-decade windows on the upper half
/// of the grid of the least-squares slope of -log psi against log r.
///
/// Throws Error(Range) when the grid does not reach min_reach_factor * complement_reach, and
/// Error(Data) for negative/NaN values or zeros followed by positive values.
NumberEstimate estimate_hardy_number(const PsiProfile& profile, const EstimatorOptions& opts = {});

struct BergmanNumbers {
  ExtendedNonNegReal b;
  std::map<double, ExtendedNonNegReal> b_alpha;
};

/// b = h and b_alpha = (alpha + 2) h.
BergmanNumbers estimate_bergman_numbers(const NumberEstimate& hardy, const std::vector<double>& alphas);

/// Three-piece evaluation of the integral of r^(p-1) psi(r)^k over (0, +inf).
struct PsiMoment {
  double near = 0.0;    // (0, r_min]: psi ~ c - 2 pi log r integrated in closed form
  double middle = 0.0;  // [r_min, r_max]: trapezoid in log r
  double tail = 0.0;    // [r_max, inf): fitted power law; +inf when divergent
  double tail_exponent = 0.0;  // s in psi ~ A r^-s over the last decade (+inf for a zero tail)
  double pole_constant = 0.0;  // c
  bool pole_model_exact = false;  // some grid circles lie inside the domain
  bool zero_tail = false;

  double total() const noexcept { return near + middle + tail; }
};

PsiMoment psi_moment(const PsiProfile& profile, double p, double power);

/// Decides whether the covering map belongs to H^p from the convergence of the integral of
/// r^(p-1) psi(r) dr: the tail exponent s is compared with p, undecided within slope_tol.
MembershipVerdict hardy_membership_via_psi(const PsiProfile& profile, double p, const EstimatorOptions& opts = {});

/// Divergence of the integral of r^(p-1) psi^(alpha+2) proves non-membership in A^p_alpha.
/// Convergence alone proves nothing; membership is only reported when p/(alpha+2) lies below the
/// estimated Hardy number by more than its confidence.
MembershipVerdict bergman_nonmembership_via_psi(const PsiProfile& profile, double p, double alpha,
                                                const EstimatorOptions& opts = {});

/// Verdicts for domains with polar complement: every number is 0, so f_D lies in no H^p or A^p_alpha.
MembershipVerdict polar_membership(const SpaceParams& space);

}  // namespace hardy
