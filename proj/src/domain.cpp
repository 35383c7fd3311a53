#include "hardy/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

// A ray, line or segment: origin + t * dir with t in [t_min, t_max], |dir| = 1.
struct Linear {
  Complex origin;
  Complex dir;
  double t_min;
  double t_max;
};

Linear ray(Complex origin, double angle) { return {origin, std::polar(1.0, angle), 0.0, kInf}; }

Linear segment_of(const Segment& s) {
  const Complex d = s.to - s.from;
  return {s.from, d / std::abs(d), 0.0, std::abs(d)};
}

Complex nearest_on(const Linear& l, Complex z) {
  const double t = std::clamp(std::real((z - l.origin) * std::conj(l.dir)), l.t_min, l.t_max);
  return l.origin + t * l.dir;
}

double distance_to(const Linear& l, Complex z) { return std::abs(z - nearest_on(l, z)); }

void circle_meets_linear(const Linear& l, Complex center, double radius, std::vector<Complex>& out) {
  // |origin + t dir - center|^2 = radius^2
  const Complex o = l.origin - center;
  const double half_b = std::real(o * std::conj(l.dir));
  const double c = std::norm(o) - radius * radius;
  const double disc = half_b * half_b - c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  for (double t : {-half_b - sq, -half_b + sq}) {
    if (t >= l.t_min && t <= l.t_max) out.push_back(l.origin + t * l.dir);
  }
}

void circle_meets_circle(Complex c1, double r1, Complex c2, double r2, std::vector<double>& angles) {
  const Complex d = c2 - c1;
  const double dist = std::abs(d);
  if (dist == 0.0 || dist > r1 + r2 || dist < std::abs(r1 - r2)) return;
  const double cos_half = std::clamp((r1 * r1 + dist * dist - r2 * r2) / (2.0 * r1 * dist), -1.0, 1.0);
  const double half = std::acos(cos_half);
  const double base = std::arg(d);
  angles.push_back(base - half);
  angles.push_back(base + half);
}

std::vector<Linear> sector_rays(const Sector& s) {
  std::vector<Linear> rays{ray(s.vertex, s.bisector_angle + s.half_angle)};
  if (s.half_angle < kPi) rays.push_back(ray(s.vertex, s.bisector_angle - s.half_angle));
  return rays;
}

std::vector<Linear> strip_lines(const Strip& s) {
  const Complex dir = std::polar(1.0, s.direction);
  const Complex normal = dir * Complex(0.0, 1.0);
  return {{s.anchor + s.half_width * normal, dir, -kInf, kInf},
          {s.anchor - s.half_width * normal, dir, -kInf, kInf}};
}

double obstacle_distance(const Obstacle& ob, Complex z) {
  return std::visit(Overloaded{
                        [&](const ClosedDisk& d) { return std::max(0.0, std::abs(z - d.center) - d.radius); },
                        [&](const Segment& s) { return distance_to(segment_of(s), z); },
                        [&](const Point& p) { return std::abs(z - p.at); },
                    },
                    ob);
}

void validate(const DomainKind& kind) {
  std::visit(Overloaded{
                 [](const Disk& d) {
                   if (!finite(d.center) || !(d.radius > 0.0) || !std::isfinite(d.radius))
                     invalid("disk: radius must be positive and finite");
                 },
                 [](const Sector& s) {
                   if (!finite(s.vertex) || !std::isfinite(s.bisector_angle))
                     invalid("sector: non-finite parameter");
                   if (!(s.half_angle > 0.0 && s.half_angle <= kPi))
                     invalid("sector: half_angle must lie in (0, pi]");
                 },
                 [](const SlitPlane& s) {
                   if (!finite(s.tip) || !std::isfinite(s.ray_angle)) invalid("slit_plane: non-finite parameter");
                 },
                 [](const Strip& s) {
                   if (!finite(s.anchor) || !std::isfinite(s.direction)) invalid("strip: non-finite parameter");
                   if (!(s.half_width > 0.0) || !std::isfinite(s.half_width))
                     invalid("strip: half_width must be positive");
                 },
                 [](const ExteriorOfDisk& d) {
                   if (!finite(d.center) || !(d.radius > 0.0) || !std::isfinite(d.radius))
                     invalid("exterior_of_disk: radius must be positive and finite");
                 },
                 [](const ComplementOf& c) {
                   for (const auto& ob : c.obstacles) {
                     std::visit(Overloaded{
                                    [](const ClosedDisk& d) {
                                      if (!finite(d.center) || !(d.radius > 0.0) || !std::isfinite(d.radius))
                                        invalid("closed_disk obstacle: radius must be positive");
                                    },
                                    [](const Segment& s) {
                                      if (!finite(s.from) || !finite(s.to)) invalid("segment obstacle: non-finite");
                                      if (s.from == s.to) invalid("segment obstacle: endpoints coincide (use a point)");
                                    },
                                    [](const Point& p) {
                                      if (!finite(p.at)) invalid("point obstacle: non-finite");
                                    },
                                },
                                ob);
                   }
                 },
             },
             kind);
}

Complex translate(Complex z, Complex v) { return z + v; }

}  // namespace

DomainSpec::DomainSpec(DomainKind kind, Complex base_point) : kind_(std::move(kind)), base_point_(base_point) {
  validate(kind_);
  if (!finite(base_point_)) invalid("base_point must be finite");
  if (!contains(*this, base_point_)) {
    std::ostringstream os;
    os << "base_point (" << base_point_.real() << ", " << base_point_.imag() << ") is not inside the "
       << kind_name() << " domain";
    invalid(os.str());
  }
}

DomainSpec DomainSpec::with_base_point(Complex base) const { return DomainSpec(kind_, base); }

DomainSpec DomainSpec::translated(Complex v) const {
  DomainKind moved = std::visit(
      Overloaded{
          [&](Disk d) -> DomainKind { d.center = translate(d.center, v); return d; },
          [&](Sector s) -> DomainKind { s.vertex = translate(s.vertex, v); return s; },
          [&](SlitPlane s) -> DomainKind { s.tip = translate(s.tip, v); return s; },
          [&](Strip s) -> DomainKind { s.anchor = translate(s.anchor, v); return s; },
          [&](ExteriorOfDisk d) -> DomainKind { d.center = translate(d.center, v); return d; },
          [&](ComplementOf c) -> DomainKind {
            for (auto& ob : c.obstacles) {
              std::visit(Overloaded{
                             [&](ClosedDisk& d) { d.center += v; },
                             [&](Segment& s) { s.from += v; s.to += v; },
                             [&](Point& p) { p.at += v; },
                         },
                         ob);
            }
            return c;
          },
      },
      kind_);
  return DomainSpec(std::move(moved), base_point_ + v);
}

bool DomainSpec::has_bounded_complement() const noexcept {
  return std::holds_alternative<ExteriorOfDisk>(kind_) || std::holds_alternative<ComplementOf>(kind_);
}

const char* DomainSpec::kind_name() const noexcept {
  static constexpr const char* names[] = {"disk", "sector", "slit_plane", "strip", "exterior_of_disk",
                                          "complement_of"};
  return names[kind_.index()];
}

namespace {

bool obstacle_equal(const Obstacle& a, const Obstacle& b) {
  if (a.index() != b.index()) return false;
  return std::visit(Overloaded{
                        [&](const ClosedDisk& d) {
                          const auto& e = std::get<ClosedDisk>(b);
                          return d.center == e.center && d.radius == e.radius;
                        },
                        [&](const Segment& s) {
                          const auto& t = std::get<Segment>(b);
                          return s.from == t.from && s.to == t.to;
                        },
                        [&](const Point& p) { return p.at == std::get<Point>(b).at; },
                    },
                    a);
}

}  // namespace

bool operator==(const DomainSpec& a, const DomainSpec& b) {
  if (a.base_point_ != b.base_point_ || a.kind_.index() != b.kind_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const auto& e = std::get<Disk>(b.kind_);
            return d.center == e.center && d.radius == e.radius;
          },
          [&](const Sector& s) {
            const auto& t = std::get<Sector>(b.kind_);
            return s.vertex == t.vertex && s.bisector_angle == t.bisector_angle && s.half_angle == t.half_angle;
          },
          [&](const SlitPlane& s) {
            const auto& t = std::get<SlitPlane>(b.kind_);
            return s.tip == t.tip && s.ray_angle == t.ray_angle;
          },
          [&](const Strip& s) {
            const auto& t = std::get<Strip>(b.kind_);
            return s.anchor == t.anchor && s.direction == t.direction && s.half_width == t.half_width;
          },
          [&](const ExteriorOfDisk& d) {
            const auto& e = std::get<ExteriorOfDisk>(b.kind_);
            return d.center == e.center && d.radius == e.radius;
          },
          [&](const ComplementOf& c) {
            const auto& o = std::get<ComplementOf>(b.kind_).obstacles;
            return std::equal(c.obstacles.begin(), c.obstacles.end(), o.begin(), o.end(), obstacle_equal);
          },
      },
      a.kind_);
}

bool contains(const DomainSpec& spec, Complex z) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return std::abs(z - d.center) < d.radius; },
          [&](const Sector& s) {
            const Complex w = (z - s.vertex) * std::polar(1.0, -s.bisector_angle);
            if (w == Complex(0.0)) return false;
            return std::abs(std::arg(w)) < s.half_angle;
          },
          [&](const SlitPlane& s) {
            // Rotate so that the slit lies on the negative real axis.
            const Complex u = (z - s.tip) * std::polar(1.0, kPi - s.ray_angle);
            return !(u.real() <= 0.0 && u.imag() == 0.0);
          },
          [&](const Strip& s) {
            const Complex w = (z - s.anchor) * std::polar(1.0, -s.direction);
            return std::abs(w.imag()) < s.half_width;
          },
          [&](const ExteriorOfDisk& d) { return std::abs(z - d.center) > d.radius; },
          [&](const ComplementOf& c) {
            return std::all_of(c.obstacles.begin(), c.obstacles.end(),
                               [&](const Obstacle& ob) { return obstacle_distance(ob, z) > 0.0; });
          },
      },
      spec.kind());
}

double distance_to_complement(const DomainSpec& spec, Complex z) {
  if (!contains(spec, z)) return 0.0;
  return std::visit(Overloaded{
                        [&](const Disk& d) { return d.radius - std::abs(z - d.center); },
                        [&](const Sector& s) {
                          double best = kInf;
                          for (const auto& r : sector_rays(s)) best = std::min(best, distance_to(r, z));
                          return best;
                        },
                        [&](const SlitPlane& s) { return distance_to(ray(s.tip, s.ray_angle), z); },
                        [&](const Strip& s) {
                          const Complex w = (z - s.anchor) * std::polar(1.0, -s.direction);
                          return s.half_width - std::abs(w.imag());
                        },
                        [&](const ExteriorOfDisk& d) { return std::abs(z - d.center) - d.radius; },
                        [&](const ComplementOf& c) {
                          double best = kInf;
                          for (const auto& ob : c.obstacles) best = std::min(best, obstacle_distance(ob, z));
                          return best;
                        },
                    },
                    spec.kind());
}

bool is_polar_complement(const DomainSpec& spec) {
  const auto* c = std::get_if<ComplementOf>(&spec.kind());
  if (c == nullptr) return false;
  return std::all_of(c->obstacles.begin(), c->obstacles.end(),
                     [](const Obstacle& ob) { return std::holds_alternative<Point>(ob); });
}

double distance_to_nonpolar_complement(const DomainSpec& spec, Complex z) {
  const auto* c = std::get_if<ComplementOf>(&spec.kind());
  if (c == nullptr) return distance_to_complement(spec, z);
  double best = kInf;
  for (const auto& ob : c->obstacles) {
    if (std::holds_alternative<Point>(ob)) continue;
    best = std::min(best, obstacle_distance(ob, z));
  }
  return best;
}

Complex nearest_nonpolar_complement_point(const DomainSpec& spec, Complex z) {
  auto on_circle = [&](Complex center, double radius) {
    const Complex d = z - center;
    const double m = std::abs(d);
    return m == 0.0 ? center + radius : center + radius * d / m;
  };
  auto nearest_of = [&](const std::vector<Linear>& parts) {
    Complex best = nearest_on(parts.front(), z);
    for (const auto& l : parts) {
      const Complex p = nearest_on(l, z);
      if (std::abs(p - z) < std::abs(best - z)) best = p;
    }
    return best;
  };
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return contains(spec, z) ? on_circle(d.center, d.radius) : z; },
          [&](const Sector& s) { return contains(spec, z) ? nearest_of(sector_rays(s)) : z; },
          [&](const SlitPlane& s) { return nearest_on(ray(s.tip, s.ray_angle), z); },
          [&](const Strip& s) { return contains(spec, z) ? nearest_of(strip_lines(s)) : z; },
          [&](const ExteriorOfDisk& d) { return contains(spec, z) ? on_circle(d.center, d.radius) : z; },
          [&](const ComplementOf& c) {
            Complex best = z;
            double best_dist = kInf;
            for (const auto& ob : c.obstacles) {
              Complex p;
              if (const auto* d = std::get_if<ClosedDisk>(&ob)) {
                p = std::abs(z - d->center) <= d->radius ? z : on_circle(d->center, d->radius);
              } else if (const auto* s = std::get_if<Segment>(&ob)) {
                p = nearest_on(segment_of(*s), z);
              } else {
                continue;
              }
              const double dist = std::abs(p - z);
              if (dist < best_dist) {
                best_dist = dist;
                best = p;
              }
            }
            return best;
          },
      },
      spec.kind());
}

std::vector<double> boundary_crossings(const DomainSpec& spec, Complex center, double radius) {
  std::vector<double> angles;
  std::vector<Complex> points;
  auto linear_parts = [&](const std::vector<Linear>& parts) {
    for (const auto& l : parts) circle_meets_linear(l, center, radius, points);
  };
  std::visit(Overloaded{
                 [&](const Disk& d) { circle_meets_circle(center, radius, d.center, d.radius, angles); },
                 [&](const Sector& s) { linear_parts(sector_rays(s)); },
                 [&](const SlitPlane& s) { linear_parts({ray(s.tip, s.ray_angle)}); },
                 [&](const Strip& s) { linear_parts(strip_lines(s)); },
                 [&](const ExteriorOfDisk& d) { circle_meets_circle(center, radius, d.center, d.radius, angles); },
                 [&](const ComplementOf& c) {
                   for (const auto& ob : c.obstacles) {
                     if (const auto* d = std::get_if<ClosedDisk>(&ob)) {
                       circle_meets_circle(center, radius, d->center, d->radius, angles);
                     } else if (const auto* s = std::get_if<Segment>(&ob)) {
                       circle_meets_linear(segment_of(*s), center, radius, points);
                     }
                   }
                 },
             },
             spec.kind());
  for (Complex p : points) angles.push_back(std::arg(p - center));
  for (double& a : angles) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a < 1e-14; }),
               angles.end());
  return angles;
}

std::optional<EnclosingCircle> enclosing_circle_of_complement(const DomainSpec& spec) {
  if (const auto* d = std::get_if<ExteriorOfDisk>(&spec.kind())) return EnclosingCircle{d->center, d->radius};
  const auto* c = std::get_if<ComplementOf>(&spec.kind());
  if (c == nullptr || c->obstacles.empty()) return std::nullopt;
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  auto extend = [&](Complex p, double r) {
    x0 = std::min(x0, p.real() - r);
    x1 = std::max(x1, p.real() + r);
    y0 = std::min(y0, p.imag() - r);
    y1 = std::max(y1, p.imag() + r);
  };
  for (const auto& ob : c->obstacles) {
    std::visit(Overloaded{
                   [&](const ClosedDisk& d) { extend(d.center, d.radius); },
                   [&](const Segment& s) { extend(s.from, 0.0); extend(s.to, 0.0); },
                   [&](const Point& p) { extend(p.at, 0.0); },
               },
               ob);
  }
  const Complex mid(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  double r = 0.0;
  for (const auto& ob : c->obstacles) {
    std::visit(Overloaded{
                   [&](const ClosedDisk& d) { r = std::max(r, std::abs(d.center - mid) + d.radius); },
                   [&](const Segment& s) { r = std::max({r, std::abs(s.from - mid), std::abs(s.to - mid)}); },
                   [&](const Point& p) { r = std::max(r, std::abs(p.at - mid)); },
               },
               ob);
  }
  return EnclosingCircle{mid, std::max(r, 1e-300)};
}

double complement_reach(const DomainSpec& spec) {
  const Complex b = spec.base_point();
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return std::abs(b - d.center) + 1.0; },
          [&](const Sector& s) { return std::abs(b - s.vertex) + 1.0; },
          [&](const SlitPlane& s) { return std::abs(b - s.tip) + 1.0; },
          [&](const Strip& s) { return std::abs(b - s.anchor) + 1.0; },
          [&](const ExteriorOfDisk& d) { return std::abs(b - d.center) + d.radius; },
          [&](const ComplementOf& c) {
            double r = 0.0;
            for (const auto& ob : c.obstacles) {
              std::visit(Overloaded{
                             [&](const ClosedDisk& d) { r = std::max(r, std::abs(d.center - b) + d.radius); },
                             [&](const Segment& s) { r = std::max({r, std::abs(s.from - b), std::abs(s.to - b)}); },
                             [&](const Point& p) { r = std::max(r, std::abs(p.at - b)); },
                         },
                         ob);
            }
            return r;
          },
      },
      spec.kind());
}

}  // namespace hardy
