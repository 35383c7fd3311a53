#pragma once

#include <compare>
#include <map>
#include <string>
#include <variant>

namespace hardy {

struct HardySpace {
  double p;
};

struct BergmanSpace {
  double p;
  double alpha;
};

/// H^p or A^p_alpha. Validated on construction: p > 0, alpha > -1.
class SpaceParams {
 public:
  static SpaceParams hardy(double p);
  static SpaceParams bergman(double p, double alpha);
  /// Parses "H:p" or "A:p:alpha".
  static SpaceParams parse(const std::string& text);

  bool is_hardy() const noexcept { return std::holds_alternative<HardySpace>(space_); }
  double p() const noexcept;
  /// Weight exponent; only meaningful for Bergman spaces.
  double alpha() const noexcept;
  /// p / (alpha + 2) for Bergman spaces; p for Hardy spaces.
  double ratio() const noexcept;

  std::string str() const;

  friend bool operator==(const SpaceParams& a, const SpaceParams& b) { return a.key() == b.key(); }
  friend auto operator<=>(const SpaceParams& a, const SpaceParams& b) { return a.key() <=> b.key(); }

 private:
  explicit SpaceParams(std::variant<HardySpace, BergmanSpace> s) : space_(s) {}
  std::tuple<int, double, double> key() const noexcept;

  std::variant<HardySpace, BergmanSpace> space_;
};

enum class MembershipStatus { Member, NonMember, Inconclusive };

const char* to_string(MembershipStatus s) noexcept;

/// Three-valued membership answer. `margin` is the signed distance of the decisive quantity
/// from its threshold (positive favours membership). `exact` marks verdicts from symbolic
/// classifiers, which are never Inconclusive.
struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::Inconclusive;
  double margin = 0.0;
  bool exact = false;
  std::string rule;
  std::map<std::string, double> diagnostics;

  bool member() const noexcept { return status == MembershipStatus::Member; }
  bool non_member() const noexcept { return status == MembershipStatus::NonMember; }
};

}  // namespace hardy
