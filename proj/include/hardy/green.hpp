#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "hardy/domain.hpp"

namespace hardy {

/// Green function of the unit disk, log|(1 - z conj(w)) / (z - w)|.
/// Returns +inf when z == w and 0 on the unit circle. Throws Error(Domain) if either
/// argument lies outside the closed unit disk.
double green_disk(Complex z, Complex w);

/// Green function of the right half-plane, log|(z + conj(w)) / (z - w)|, for Re z, Re w >= 0.
double green_right_half_plane(Complex z, Complex w);

/// g_D(z, w0) for canonical domains by conformal transport to the disk or half-plane.
/// Extended by zero outside the domain. Throws Error(Unsupported) for ComplementOf specs.
double closed_form_green(const DomainSpec& spec, Complex z, Complex w0);

struct WosConfig {
  double epsilon_shell = 1e-6;
  std::uint64_t max_steps = 200000;
  /// Maximum jump radius; defaults to 1e4 (1 + |z| + |w0|) when unset.
  std::optional<double> sphere_cap;
  std::uint64_t walks = 10000;
  std::uint64_t seed = 0x5eed;

  void validate() const;
};

struct WosEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t walks = 0;
  std::uint64_t failed_walks = 0;
  double mean_steps = 0.0;
  bool clamped = false;  // the raw estimate was negative and has been clamped to 0
};

/// Walk-on-spheres estimate of g_D(z, w0).
///
/// Each walk jumps to a uniform point of the largest admissible circle until it is within
/// epsilon_shell of the (non-polar) complement, then scores the harmonic boundary data at the
/// nearest complement point. For domains with bounded complement the boundary data are
/// log|xi - w0| - log|xi - a| with a fixed point a of the complement, and walkers far from the
/// complement return to an enclosing circle through the exact exterior harmonic measure.
/// Walk k draws from a stream derived only from (seed, k), so results do not depend on the
/// number of worker threads.
///
/// Returns (0, 0) when z is not in the domain. Throws Error(Precondition) for polar
/// complements or z == w0 and Error(Estimation) when more than 1% of walks exceed max_steps.
WosEstimate wos_green(const DomainSpec& spec, Complex z, Complex w0, const WosConfig& cfg);

struct ClosedFormBackend {};
struct WosBackend {
  WosConfig config;
};
using GreenBackend = std::variant<ClosedFormBackend, WosBackend>;

struct GreenValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Evaluator of the extended-by-zero Green function of one domain.
class GreenEvaluator {
 public:
  /// Throws Error(Precondition) for polar complements (no Green function) and
  /// Error(Unsupported) when the closed-form backend is requested for a ComplementOf spec.
  GreenEvaluator(DomainSpec spec, GreenBackend backend);

  static GreenEvaluator closed_form(DomainSpec spec) { return {std::move(spec), ClosedFormBackend{}}; }
  static GreenEvaluator wos(DomainSpec spec, WosConfig cfg) { return {std::move(spec), WosBackend{cfg}}; }
  /// Closed form for canonical specs, walk-on-spheres otherwise.
  static GreenEvaluator automatic(DomainSpec spec, WosConfig cfg = {});

  const DomainSpec& spec() const noexcept { return spec_; }
  const GreenBackend& backend() const noexcept { return backend_; }
  bool is_monte_carlo() const noexcept { return std::holds_alternative<WosBackend>(backend_); }
  const char* backend_name() const noexcept { return is_monte_carlo() ? "wos" : "closed_form"; }

  GreenValue eval(Complex z, Complex w0) const;
  /// Monte Carlo evaluation with an explicit seed (closed form ignores it).
  GreenValue eval(Complex z, Complex w0, std::uint64_t seed) const;

 private:
  DomainSpec spec_;
  GreenBackend backend_;
};

}  // namespace hardy
