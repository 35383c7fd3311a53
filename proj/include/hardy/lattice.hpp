#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hardy/extended.hpp"
#include "hardy/space.hpp"

namespace hardy {

using Rational = boost::multiprecision::cpp_rational;

/// A real exponent that remembers whether it is an exact rational.
class Exponent {
 public:
  /// Integers and dyadic fractions with denominator up to 2^10 are exact; anything else is
  /// compared with a 1e-12 tolerance.
  Exponent(double v);  // NOLINT(google-explicit-constructor)
  Exponent(Rational q);  // NOLINT(google-explicit-constructor)
  static Exponent ratio(long long num, long long den);
  /// "5", "-0.5", "2.25" or "1/3"; decimal and fraction literals are exact.
  static Exponent parse(const std::string& text);

  double value() const noexcept { return value_; }
  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::optional<Rational>& exact() const noexcept { return exact_; }
  std::string str() const;

 private:
  double value_;
  std::optional<Rational> exact_;
};

/// (a + x) / y for exponents, kept exact when all inputs are.
Exponent shifted_ratio(const Exponent& x, long long shift, const Exponent& y);

enum class Comparison { Less, Equal, Greater };

/// Exact comparison for exact operands, otherwise within 1e-12 (relative to max(1, |a|, |b|)).
Comparison compare(const Exponent& a, const Exponent& b);

enum class InclusionRule { HardyOrder, DurenEmbedding, ArevaloEq, ArevaloDown, ArevaloUp, KulikovLine };

const char* to_string(InclusionRule r) noexcept;

struct InclusionVerdict {
  bool included = false;
  InclusionRule rule = InclusionRule::HardyOrder;
  /// The comparison that decided the verdict, e.g. "(alpha+1)/p = 0.6 < (beta+1)/q = 0.5".
  std::string detail;
};

/// H^q inside H^p iff p <= q.
bool hardy_inclusion(const Exponent& q, const Exponent& p);

/// Sufficient condition only: true when q >= p / (alpha + 2). false means "not guaranteed".
bool hardy_in_bergman(const Exponent& q, const Exponent& p, const Exponent& alpha);

/// Exact characterisation of A^p_alpha inside A^q_beta.
InclusionVerdict bergman_inclusion(const Exponent& p, const Exponent& alpha, const Exponent& q, const Exponent& beta);

/// Checks H^r inside A^{p_1}_{alpha_1} inside A^{p_2}_{alpha_2} ... along the line p/(alpha+2) = r.
/// Throws Error(Precondition) for off-line or unsorted input.
bool kulikov_chain(const Exponent& r, const std::vector<std::pair<Exponent, Exponent>>& chain);

/// Inclusion between any two spaces via the rules above; nullopt when no rule decides
/// (a Hardy space inside a Bergman space beyond the sufficient condition, or a Bergman space
/// inside a Hardy space).
std::optional<InclusionVerdict> space_inclusion(const SpaceParams& from, const SpaceParams& to);

struct Violation {
  SpaceParams member;
  SpaceParams non_member;
  InclusionRule rule;
  std::string describe() const;
};

struct AssembledNumbers {
  ExtendedNonNegReal h;
  ExtendedNonNegReal b;
  std::map<double, ExtendedNonNegReal> b_alpha;
  /// Member verdicts for a space contained in a space with a NonMember verdict.
  std::vector<Violation> violations;
};

/// Sup-assembly of the numbers from membership verdicts; Inconclusive entries are ignored.
AssembledNumbers assemble_numbers(const std::map<SpaceParams, MembershipVerdict>& memberships);

struct ExtremalExponents {
  double h;
  double p_D;
};

/// Hardy number 1/a and extremal exponent 1/b of f_{a,b}(D).
/// Throws Error(Precondition) unless 0 < b <= a <= 2.
ExtremalExponents extremal_pD(double a, double b);

}  // namespace hardy
