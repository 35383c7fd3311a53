#include "hardy/extended.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

ExtendedNonNegReal::ExtendedNonNegReal(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0)
    throw Error(ErrorKind::Domain, "extended non-negative real must be >= 0 or +inf");
}

ExtendedNonNegReal ExtendedNonNegReal::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(ErrorKind::Domain, "scale factor must be positive");
  if (is_infinite()) return infinity();
  return ExtendedNonNegReal(value_ * factor);
}

std::string ExtendedNonNegReal::str() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << value_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtendedNonNegReal& v) { return os << v.str(); }

}  // namespace hardy
