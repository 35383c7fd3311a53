#include "hardy/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - |z|^2 without cancellation near the circle.
double one_minus_norm(Complex z) {
  const double m = std::abs(z);
  return (1.0 - m) * (1.0 + m);
}

// Half-plane Green function after a power map w -> w^k, with the pole's image normalised to
// modulus 1. log_ratio = k (log|w| - log|w0|); phi, phi0 are the image arguments.
double power_map_green(double log_ratio, double phi, double phi0) {
  const double c = std::cos(phi) * std::cos(phi0);
  if (c <= 0.0) return 0.0;
  const double t = std::exp(-std::abs(log_ratio));
  if (t == 0.0) return 0.0;
  const double s = std::sin(0.5 * (phi - phi0));
  const double denom = (1.0 - t) * (1.0 - t) + 4.0 * t * s * s;
  if (denom == 0.0) return kInf;
  return 0.5 * std::log1p(4.0 * t * c / denom);
}

// Sector {|arg w| < half_angle} in local coordinates, mapped by w^(pi / (2 half_angle)).
double sector_green(Complex w, Complex w0, double half_angle) {
  const double k = kPi / (2.0 * half_angle);
  return power_map_green(k * (std::log(std::abs(w)) - std::log(std::abs(w0))), k * std::arg(w), k * std::arg(w0));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double green_disk(Complex z, Complex w) {
  constexpr double slack = 1e-14;
  if (std::abs(z) > 1.0 + slack || std::abs(w) > 1.0 + slack)
    throw Error(ErrorKind::Domain, "green_disk: arguments must lie in the closed unit disk");
  if (z == w) return kInf;
  const double a = std::max(0.0, one_minus_norm(z));
  const double b = std::max(0.0, one_minus_norm(w));
  return 0.5 * std::log1p(a * b / std::norm(z - w));
}

double green_right_half_plane(Complex z, Complex w) {
  if (z.real() <= 0.0 || w.real() <= 0.0) return 0.0;
  if (z == w) return kInf;
  return 0.5 * std::log1p(4.0 * z.real() * w.real() / std::norm(z - w));
}

double closed_form_green(const DomainSpec& spec, Complex z, Complex w0) {
  if (!spec.is_canonical())
    throw Error(ErrorKind::Unsupported, "closed-form Green function is only available for canonical domains");
  if (!contains(spec, z) || !contains(spec, w0)) return 0.0;
  if (z == w0) return kInf;
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return green_disk((z - d.center) / d.radius, (w0 - d.center) / d.radius); },
          [&](const Sector& s) {
            const Complex rot = std::polar(1.0, -s.bisector_angle);
            return sector_green((z - s.vertex) * rot, (w0 - s.vertex) * rot, s.half_angle);
          },
          [&](const SlitPlane& s) {
            // Slit on the negative real axis, then the principal square root.
            const Complex rot = std::polar(1.0, kPi - s.ray_angle);
            return sector_green((z - s.tip) * rot, (w0 - s.tip) * rot, kPi);
          },
          [&](const Strip& s) {
            const Complex rot = std::polar(1.0, -s.direction);
            const double scale = kPi / (2.0 * s.half_width);
            const Complex a = (z - s.anchor) * rot * scale;
            const Complex a0 = (w0 - s.anchor) * rot * scale;
            const double c = std::cos(a.imag()) * std::cos(a0.imag());
            if (c <= 0.0) return 0.0;
            const double sh = std::sinh(0.5 * (a.real() - a0.real()));
            const double sn = std::sin(0.5 * (a.imag() - a0.imag()));
            const double denom = sh * sh + sn * sn;
            if (denom == 0.0) return kInf;
            return 0.5 * std::log1p(c / denom);
          },
          [&](const ExteriorOfDisk& d) {
            // Inversion onto the punctured disk; the puncture is polar and ignored.
            return green_disk(d.radius / (z - d.center), d.radius / (w0 - d.center));
          },
          [&](const ComplementOf&) -> double { throw Error(ErrorKind::Unsupported, "unreachable"); },
      },
      spec.kind());
}

// ---------------------------------------------------------------------------------------------
// Walk on spheres

void WosConfig::validate() const {
  if (!(epsilon_shell > 0.0)) throw Error(ErrorKind::InvalidSpec, "WoS: epsilon_shell must be > 0");
  if (walks < 1) throw Error(ErrorKind::InvalidSpec, "WoS: walks must be >= 1");
  if (max_steps < 1) throw Error(ErrorKind::InvalidSpec, "WoS: max_steps must be >= 1");
  if (sphere_cap && !(*sphere_cap >= epsilon_shell))
    throw Error(ErrorKind::InvalidSpec, "WoS: sphere_cap must be >= epsilon_shell");
}

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::uint64_t walk_stream_seed(std::uint64_t seed, std::uint64_t walk) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (walk + 1)));
  mix.next();
  return mix.next();
}

struct WalkSetup {
  const DomainSpec* spec;
  Complex w0;
  std::optional<Complex> anchor;
  std::optional<EnclosingCircle> enclosing;
  double cap;
  double eps;
  std::uint64_t max_steps;

  double boundary_data(Complex xi) const {
    double v = std::log(std::abs(xi - w0));
    if (anchor) v -= std::log(std::abs(xi - *anchor));
    return v;
  }
};

std::optional<Complex> harmonic_anchor(const DomainSpec& spec) {
  if (const auto* d = std::get_if<ExteriorOfDisk>(&spec.kind())) return d->center;
  if (const auto* c = std::get_if<ComplementOf>(&spec.kind())) {
    for (const auto& ob : c->obstacles) {
      if (const auto* d = std::get_if<ClosedDisk>(&ob)) return d->center;
      if (const auto* s = std::get_if<Segment>(&ob)) return 0.5 * (s->from + s->to);
    }
  }
  return std::nullopt;
}

struct WalkOutcome {
  bool ok;
  double score;
  std::uint64_t steps;
};

WalkOutcome run_walk(const WalkSetup& w, Complex start, std::uint64_t stream_seed) {
  SplitMix64 rng(stream_seed);
  Complex x = start;
  for (std::uint64_t step = 0; step < w.max_steps; ++step) {
    if (w.enclosing) {
      const Complex rel = (x - w.enclosing->center) / w.enclosing->radius;
      if (std::norm(rel) > 4.0) {
        // Exit point on the enclosing circle: push the uniform law forward by the disk
        // automorphism sending 0 to the inverted starting point.
        const Complex y = 1.0 / std::conj(rel);
        const Complex u = std::polar(1.0, 2.0 * kPi * rng.uniform());
        const Complex xi = (u + y) / (1.0 + std::conj(y) * u);
        x = w.enclosing->center + w.enclosing->radius * xi;
        continue;
      }
    }
    const double d = distance_to_nonpolar_complement(*w.spec, x);
    if (d <= w.eps) {
      const Complex xi = nearest_nonpolar_complement_point(*w.spec, x);
      return {true, w.boundary_data(xi), step};
    }
    x += std::polar(std::min(d, w.cap), 2.0 * kPi * rng.uniform());
  }
  return {false, 0.0, w.max_steps};
}

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t failed = 0;
  std::uint64_t steps = 0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  void merge(const Moments& o) {
    failed += o.failed;
    steps += o.steps;
    if (o.n == 0) return;
    if (n == 0) {
      const auto f = failed, s = steps;
      *this = o;
      failed = f;
      steps = s;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

}  // namespace

WosEstimate wos_green(const DomainSpec& spec, Complex z, Complex w0, const WosConfig& cfg) {
  cfg.validate();
  if (is_polar_complement(spec))
    throw Error(ErrorKind::Precondition, "walk on spheres needs a non-polar complement");
  if (!contains(spec, z)) return {};
  if (z == w0) throw Error(ErrorKind::Precondition, "wos_green: z coincides with the pole");
  if (!contains(spec, w0)) throw Error(ErrorKind::Precondition, "wos_green: pole must lie inside the domain");

  WalkSetup setup{&spec,
                  w0,
                  harmonic_anchor(spec),
                  spec.has_bounded_complement() ? enclosing_circle_of_complement(spec) : std::nullopt,
                  cfg.sphere_cap.value_or(1e4 * (1.0 + std::abs(z) + std::abs(w0))),
                  cfg.epsilon_shell,
                  cfg.max_steps};

  constexpr std::uint64_t kChunk = 512;
  const std::uint64_t chunks = (cfg.walks + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Moments m;
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(cfg.walks, begin + kChunk);
    for (std::uint64_t k = begin; k < end; ++k) {
      const WalkOutcome out = run_walk(setup, z, walk_stream_seed(cfg.seed, k));
      m.steps += out.steps;
      if (out.ok) {
        m.add(out.score);
      } else {
        ++m.failed;
      }
    }
    partial[c] = m;
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);

  if (static_cast<double>(total.failed) > 0.01 * static_cast<double>(cfg.walks) || total.n == 0) {
    throw Error(ErrorKind::Estimation, "walk on spheres: " + std::to_string(total.failed) + " of " +
                                           std::to_string(cfg.walks) + " walks exceeded max_steps");
  }

  double singular = -std::log(std::abs(z - w0));
  if (setup.anchor) singular += std::log(std::abs(z - *setup.anchor));

  WosEstimate out;
  out.walks = cfg.walks;
  out.failed_walks = total.failed;
  out.mean_steps = static_cast<double>(total.steps) / static_cast<double>(cfg.walks);
  const double variance = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  out.stderr_ = std::sqrt(variance / static_cast<double>(total.n));
  out.estimate = singular + total.mean;
  if (out.estimate < 0.0) {
    out.estimate = 0.0;
    out.clamped = true;
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

GreenEvaluator::GreenEvaluator(DomainSpec spec, GreenBackend backend)
    : spec_(std::move(spec)), backend_(std::move(backend)) {
  if (is_polar_complement(spec_))
    throw Error(ErrorKind::Precondition, "domain has a polar complement and no Green function");
  if (std::holds_alternative<ClosedFormBackend>(backend_) && !spec_.is_canonical())
    throw Error(ErrorKind::Unsupported, "closed-form backend needs a canonical domain; use walk on spheres");
  if (const auto* w = std::get_if<WosBackend>(&backend_)) w->config.validate();
}

GreenEvaluator GreenEvaluator::automatic(DomainSpec spec, WosConfig cfg) {
  if (spec.is_canonical()) return closed_form(std::move(spec));
  return wos(std::move(spec), cfg);
}

GreenValue GreenEvaluator::eval(Complex z, Complex w0) const {
  if (const auto* w = std::get_if<WosBackend>(&backend_)) return eval(z, w0, w->config.seed);
  return eval(z, w0, 0);
}

GreenValue GreenEvaluator::eval(Complex z, Complex w0, std::uint64_t seed) const {
  if (const auto* w = std::get_if<WosBackend>(&backend_)) {
    if (!contains(spec_, z)) return {};
    if (z == w0) return {kInf, 0.0};
    WosConfig cfg = w->config;
    cfg.seed = seed;
    const WosEstimate e = wos_green(spec_, z, w0, cfg);
    return {e.estimate, e.stderr_};
  }
  return {closed_form_green(spec_, z, w0), 0.0};
}

}  // namespace hardy
