#include "hardy/error.hpp"

namespace hardy {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Unsupported: return "unsupported-backend";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Range: return "range";
    case ErrorKind::Data: return "data";
    case ErrorKind::PoleProximity: return "pole-proximity";
    case ErrorKind::Estimation: return "estimation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace hardy
