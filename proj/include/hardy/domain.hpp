#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;

// Canonical domains. Angles are in radians.

struct Disk {
  Complex center;
  double radius = 1.0;
};

/// {z : |arg((z - vertex) e^{-i bisector_angle})| < half_angle}, half_angle in (0, pi].
struct Sector {
  Complex vertex;
  double bisector_angle = 0.0;
  double half_angle = 0.5 * 3.141592653589793;
};

/// The plane minus the closed ray {tip + t e^{i ray_angle} : t >= 0}.
struct SlitPlane {
  Complex tip;
  double ray_angle = 3.141592653589793;
};

/// {z : |Im((z - anchor) e^{-i direction})| < half_width}.
struct Strip {
  Complex anchor;
  double direction = 0.0;
  double half_width = 1.0;
};

struct ExteriorOfDisk {
  Complex center;
  double radius = 1.0;
};

// Obstacles of a ComplementOf domain; all are closed sets.

struct ClosedDisk {
  Complex center;
  double radius = 1.0;
};

struct Segment {
  Complex from;
  Complex to;
};

struct Point {
  Complex at;
};

using Obstacle = std::variant<ClosedDisk, Segment, Point>;

struct ComplementOf {
  std::vector<Obstacle> obstacles;
};

using DomainKind = std::variant<Disk, Sector, SlitPlane, Strip, ExteriorOfDisk, ComplementOf>;

/// A validated planar domain together with the base point used as the Green pole.
///
/// Construction throws Error(InvalidSpec) when a parameter is out of range or the base
/// point is not an interior point. Instances are immutable.
class DomainSpec {
 public:
  DomainSpec(DomainKind kind, Complex base_point);

  const DomainKind& kind() const noexcept { return kind_; }
  Complex base_point() const noexcept { return base_point_; }

  /// Same geometry, different base point (validated).
  DomainSpec with_base_point(Complex base) const;
  /// Geometry and base point shifted by v.
  DomainSpec translated(Complex v) const;

  bool is_canonical() const noexcept { return !std::holds_alternative<ComplementOf>(kind_); }
  /// True when the complement of the domain is a bounded set.
  bool has_bounded_complement() const noexcept;

  const char* kind_name() const noexcept;

  friend bool operator==(const DomainSpec& a, const DomainSpec& b);

 private:
  DomainKind kind_;
  Complex base_point_;
};

bool contains(const DomainSpec& spec, Complex z);

/// Euclidean distance from z to the complement; 0 when z is not in the domain.
double distance_to_complement(const DomainSpec& spec, Complex z);

/// True iff the complement is a finite set of points.
bool is_polar_complement(const DomainSpec& spec);

/// Like distance_to_complement, but isolated points of the complement are ignored.
/// Returns +inf when the complement is polar.
double distance_to_nonpolar_complement(const DomainSpec& spec, Complex z);

/// A point of the non-polar complement nearest to z (z need not lie in the domain).
Complex nearest_nonpolar_complement_point(const DomainSpec& spec, Complex z);

/// Angles in [0, 2pi) at which the circle |z - center| = radius meets the boundary of the
/// domain, sorted and deduplicated. Point obstacles contribute nothing.
std::vector<double> boundary_crossings(const DomainSpec& spec, Complex center, double radius);

/// A disk enclosing the whole complement, for domains with bounded complement.
struct EnclosingCircle {
  Complex center;
  double radius;
};
std::optional<EnclosingCircle> enclosing_circle_of_complement(const DomainSpec& spec);

/// Length scale beyond which the profile tail is measured: the largest distance from the base
/// point to the complement when it is bounded, |base - anchor| + 1 otherwise.
double complement_reach(const DomainSpec& spec);

}  // namespace hardy
