#include "hardy/space.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {
namespace {

double parse_number(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw Error(ErrorKind::InvalidSpec, "cannot parse number '" + s + "' in " + context);
  return v;
}

}  // namespace

SpaceParams SpaceParams::hardy(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidSpec, "Hardy space requires finite p > 0");
  return SpaceParams(HardySpace{p});
}

SpaceParams SpaceParams::bergman(double p, double alpha) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidSpec, "Bergman space requires finite p > 0");
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidSpec, "Bergman space requires finite alpha > -1");
  return SpaceParams(BergmanSpace{p, alpha});
}

SpaceParams SpaceParams::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() == 2 && (parts[0] == "H" || parts[0] == "h")) return hardy(parse_number(parts[1], text));
  if (parts.size() == 3 && (parts[0] == "A" || parts[0] == "a"))
    return bergman(parse_number(parts[1], text), parse_number(parts[2], text));
  throw Error(ErrorKind::InvalidSpec, "space must be H:p or A:p:alpha, got '" + text + "'");
}

double SpaceParams::p() const noexcept {
  return std::visit([](const auto& s) { return s.p; }, space_);
}

double SpaceParams::alpha() const noexcept {
  if (const auto* b = std::get_if<BergmanSpace>(&space_)) return b->alpha;
  return 0.0;
}

double SpaceParams::ratio() const noexcept {
  if (const auto* b = std::get_if<BergmanSpace>(&space_)) return b->p / (b->alpha + 2.0);
  return p();
}

std::tuple<int, double, double> SpaceParams::key() const noexcept {
  if (const auto* b = std::get_if<BergmanSpace>(&space_)) return {1, b->alpha, b->p};
  return {0, 0.0, p()};
}

std::string SpaceParams::str() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  if (is_hardy()) {
    os << "H^" << p();
  } else {
    os << "A^" << p() << "_" << alpha();
  }
  return os.str();
}

const char* to_string(MembershipStatus s) noexcept {
  switch (s) {
    case MembershipStatus::Member: return "Member";
    case MembershipStatus::NonMember: return "NonMember";
    case MembershipStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

}  // namespace hardy
