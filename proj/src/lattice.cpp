#include "hardy/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <locale>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

Rational parse_decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  boost::multiprecision::cpp_int digits = 0, scale = 1;
  bool any = false, dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (dot) scale *= 10;
      any = true;
    } else {
      throw Error(ErrorKind::InvalidSpec, "cannot parse exponent '" + text + "'");
    }
  }
  if (!any) throw Error(ErrorKind::InvalidSpec, "cannot parse exponent '" + text + "'");
  Rational q(digits, scale);
  return negative ? Rational(-q) : q;
}

const char* symbol(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::Equal: return "=";
    case Comparison::Greater: return ">";
  }
  return "?";
}

}  // namespace

Exponent::Exponent(double v) : value_(v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "exponent must be finite");
  const double scaled = std::ldexp(v, 10);
  if (std::abs(scaled) < 9.0e15 && scaled == std::floor(scaled)) {
    exact_ = Rational(static_cast<long long>(scaled), 1024);
  }
}

Exponent::Exponent(Rational q) : value_(static_cast<double>(q)), exact_(std::move(q)) {}

Exponent Exponent::ratio(long long num, long long den) {
  if (den == 0) throw Error(ErrorKind::Domain, "exponent denominator is zero");
  return Exponent(Rational(num, den));
}

Exponent Exponent::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Exponent(parse_decimal(text));
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::InvalidSpec, "exponent '" + text + "' has a zero denominator");
  return Exponent(Rational(num / den));
}

std::string Exponent::str() const {
  if (exact_ && boost::multiprecision::denominator(*exact_) != 1 && boost::multiprecision::denominator(*exact_) <= 1024) {
    return exact_->str();
  }
  return fmt(value_);
}

Exponent shifted_ratio(const Exponent& x, long long shift, const Exponent& y) {
  if (x.is_exact() && y.is_exact()) {
    if (*y.exact() == 0) throw Error(ErrorKind::Domain, "division by a zero exponent");
    return Exponent(Rational((*x.exact() + shift) / *y.exact()));
  }
  return Exponent((x.value() + static_cast<double>(shift)) / y.value());
}

Comparison compare(const Exponent& a, const Exponent& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& qa = *a.exact();
    const auto& qb = *b.exact();
    if (qa < qb) return Comparison::Less;
    if (qa > qb) return Comparison::Greater;
    return Comparison::Equal;
  }
  const double tol = kTol * std::max({1.0, std::abs(a.value()), std::abs(b.value())});
  if (a.value() < b.value() - tol) return Comparison::Less;
  if (a.value() > b.value() + tol) return Comparison::Greater;
  return Comparison::Equal;
}

const char* to_string(InclusionRule r) noexcept {
  switch (r) {
    case InclusionRule::HardyOrder: return "HardyOrder";
    case InclusionRule::DurenEmbedding: return "DurenEmbedding";
    case InclusionRule::ArevaloEq: return "ArevaloEq";
    case InclusionRule::ArevaloDown: return "ArevaloDown";
    case InclusionRule::ArevaloUp: return "ArevaloUp";
    case InclusionRule::KulikovLine: return "KulikovLine";
  }
  return "?";
}

bool hardy_inclusion(const Exponent& q, const Exponent& p) {
  if (!(q.value() > 0.0 && p.value() > 0.0)) throw Error(ErrorKind::Domain, "Hardy exponents must be > 0");
  return compare(p, q) != Comparison::Greater;
}

bool hardy_in_bergman(const Exponent& q, const Exponent& p, const Exponent& alpha) {
  if (!(q.value() > 0.0 && p.value() > 0.0)) throw Error(ErrorKind::Domain, "exponents must be > 0");
  if (!(alpha.value() > -1.0)) throw Error(ErrorKind::Domain, "alpha must be > -1");
  return compare(q, shifted_ratio(p, 0, shifted_ratio(alpha, 2, Exponent(1.0)))) != Comparison::Less;
}

InclusionVerdict bergman_inclusion(const Exponent& p, const Exponent& alpha, const Exponent& q, const Exponent& beta) {
  if (!(p.value() > 0.0 && q.value() > 0.0)) throw Error(ErrorKind::Domain, "Bergman exponents must be > 0");
  if (!(alpha.value() > -1.0 && beta.value() > -1.0)) throw Error(ErrorKind::Domain, "weights must be > -1");
  InclusionVerdict v;
  const Comparison pq = compare(p, q);
  if (pq == Comparison::Equal) {
    v.rule = InclusionRule::ArevaloEq;
    const Comparison c = compare(alpha, beta);
    v.included = c != Comparison::Greater;
    v.detail = "p = q, alpha = " + alpha.str() + " " + symbol(c) + " beta = " + beta.str();
    return v;
  }
  const long long shift = pq == Comparison::Greater ? 1 : 2;
  const Exponent lhs = shifted_ratio(alpha, shift, p);
  const Exponent rhs = shifted_ratio(beta, shift, q);
  const Comparison c = compare(lhs, rhs);
  const std::string k = shift == 1 ? "+1" : "+2";
  v.detail = "(alpha" + k + ")/p = " + lhs.str() + " " + symbol(c) + " (beta" + k + ")/q = " + rhs.str();
  if (pq == Comparison::Greater) {
    v.rule = InclusionRule::ArevaloDown;
    v.included = c == Comparison::Less;
  } else {
    v.rule = InclusionRule::ArevaloUp;
    v.included = c != Comparison::Greater;
  }
  return v;
}

bool kulikov_chain(const Exponent& r, const std::vector<std::pair<Exponent, Exponent>>& chain) {
  if (chain.empty()) throw Error(ErrorKind::Precondition, "chain is empty");
  if (!(r.value() > 0.0)) throw Error(ErrorKind::Precondition, "r must be > 0");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& [p, alpha] = chain[i];
    if (!(p.value() > 0.0 && alpha.value() > -1.0)) throw Error(ErrorKind::Precondition, "invalid chain entry");
    if (compare(shifted_ratio(p, 0, shifted_ratio(alpha, 2, Exponent(1.0))), r) != Comparison::Equal)
      throw Error(ErrorKind::Precondition, "chain entry (" + p.str() + ", " + alpha.str() + ") is off the line p/(alpha+2) = " + r.str());
    if (i > 0 && compare(chain[i - 1].first, p) == Comparison::Greater)
      throw Error(ErrorKind::Precondition, "chain must be sorted by p");
  }
  if (!hardy_in_bergman(r, chain.front().first, chain.front().second)) return false;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!bergman_inclusion(chain[i].first, chain[i].second, chain[i + 1].first, chain[i + 1].second).included)
      return false;
  }
  return true;
}

std::optional<InclusionVerdict> space_inclusion(const SpaceParams& from, const SpaceParams& to) {
  if (from.is_hardy() && to.is_hardy()) {
    const bool in = hardy_inclusion(from.p(), to.p());
    return InclusionVerdict{in, InclusionRule::HardyOrder, "p = " + fmt(to.p()) + (in ? " <= " : " > ") + "q = " + fmt(from.p())};
  }
  if (from.is_hardy()) {
    if (!hardy_in_bergman(from.p(), to.p(), to.alpha())) return std::nullopt;
    return InclusionVerdict{true, InclusionRule::DurenEmbedding, "q = " + fmt(from.p()) + " >= p/(alpha+2) = " + fmt(to.ratio())};
  }
  if (to.is_hardy()) return std::nullopt;
  return bergman_inclusion(from.p(), from.alpha(), to.p(), to.alpha());
}

std::string Violation::describe() const {
  return "member of " + member.str() + " but not of " + non_member.str() + ", which contains it (" + to_string(rule) + ")";
}

AssembledNumbers assemble_numbers(const std::map<SpaceParams, MembershipVerdict>& memberships) {
  AssembledNumbers out;
  double h = 0.0, b = 0.0;
  std::map<double, double> b_alpha;
  for (const auto& [space, verdict] : memberships) {
    if (!space.is_hardy()) b_alpha.try_emplace(space.alpha(), 0.0);
    if (!verdict.member()) continue;
    if (space.is_hardy()) {
      h = std::max(h, space.p());
    } else {
      b_alpha[space.alpha()] = std::max(b_alpha[space.alpha()], space.p());
    }
  }
  for (const auto& [alpha, sup] : b_alpha) {
    out.b_alpha[alpha] = ExtendedNonNegReal(sup);
    b = std::max(b, sup / (alpha + 2.0));
  }
  out.h = ExtendedNonNegReal(h);
  out.b = ExtendedNonNegReal(b);

  for (const auto& [x, vx] : memberships) {
    if (!vx.member()) continue;
    for (const auto& [y, vy] : memberships) {
      if (!vy.non_member()) continue;
      if (auto inc = space_inclusion(x, y); inc && inc->included) out.violations.push_back({x, y, inc->rule});
    }
  }
  return out;
}

ExtremalExponents extremal_pD(double a, double b) {
  if (!(a > 0.0 && a <= 2.0)) throw Error(ErrorKind::Precondition, "extremal exponents need 0 < a <= 2");
  if (!(b > 0.0)) throw Error(ErrorKind::Precondition, "extremal exponents need b > 0");
  if (b > a) throw Error(ErrorKind::Precondition, "b > a would put p_D below the Hardy number");
  return {1.0 / a, 1.0 / b};
}

}  // namespace hardy
