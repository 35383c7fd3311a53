#include "hardy/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <locale>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hardy/analytic.hpp"
#include "hardy/error.hpp"
#include "hardy/estimator.hpp"
#include "hardy/lattice.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kAlphas{-0.5, 0.0, 1.0, 2.0};

// Line-oriented message builder with fixed formatting.
class Detail {
 public:
  Detail() {
    os_.imbue(std::locale::classic());
    os_.precision(6);
  }
  template <class T>
  Detail& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

CheckResult result(bool passed, const Detail& d) { return {0, {}, passed, d.str(), 0.0}; }

DomainSpec sector(double half_angle) { return DomainSpec(Sector{{0.0, 0.0}, 0.0, half_angle}, {1.0, 0.0}); }

DomainSpec slit(Complex base) { return DomainSpec(SlitPlane{{0.25, 0.0}, kPi}, base); }

DomainSpec two_disks() {
  return DomainSpec(ComplementOf{{ClosedDisk{{-2.0, 0.0}, 1.0}, ClosedDisk{{2.0, 0.0}, 1.0}}}, {0.0, 0.0});
}

std::unique_ptr<ProfileRun> closed_form_run(const std::string& label, const DomainSpec& spec, double r_min,
                                            double r_max, unsigned ppd) {
  auto ev = GreenEvaluator::closed_form(spec);
  QuadSettings quad;
  auto profile = build_profile(ev, r_min, r_max, ppd, quad);
  return std::make_unique<ProfileRun>(ProfileRun{label, std::move(ev), std::move(profile), quad});
}

std::unique_ptr<ProfileRun> make_run(const std::string& key) {
  auto slit_run = [&](Complex base) {
    const DomainSpec s = slit(base);
    return closed_form_run(key, s, 0.5 * distance_to_complement(s, base), 1e6, 8);
  };
  if (key == "disk") return closed_form_run(key, DomainSpec(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0}), 0.05, 20.0, 8);
  if (key == "slit") return slit_run({1.0, 0.0});
  if (key == "slit_base_2+i") return slit_run({2.0, 1.0});
  if (key.rfind("sector_", 0) == 0) {
    const double divisor = std::stod(key.substr(std::string("sector_pi/").size()));
    return closed_form_run(key, sector(kPi / divisor), 0.5, 1e6, 8);
  }
  if (key == "exterior_disk")
    return closed_form_run(key, DomainSpec(ExteriorOfDisk{{5.0, 0.0}, 1.0}, {0.0, 0.0}), 0.5, 1e5, 8);
  if (key == "two_disks") {
    WosConfig cfg;
    cfg.walks = 20000;
    auto ev = GreenEvaluator::wos(two_disks(), cfg);
    QuadSettings quad;
    quad.wos_nodes = 64;
    auto profile = build_profile(ev, 0.5, 1e4, 4, quad);
    return std::make_unique<ProfileRun>(ProfileRun{key, std::move(ev), std::move(profile), quad});
  }
  throw Error(ErrorKind::Precondition, "unknown acceptance profile '" + key + "'");
}

double estimate(AcceptanceContext& ctx, const std::string& key) {
  return estimate_hardy_number(ctx.profile(key).profile).value.value();
}

// 1
CheckResult disk_closed_form(AcceptanceContext&) {
  const auto ev = GreenEvaluator::closed_form(DomainSpec(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0}));
  double worst = 0.0;
  for (double r : log_grid(0.05, 0.95, 16)) {
    const double exact = 2.0 * kPi * std::log(1.0 / r);
    worst = std::max(worst, std::abs(psi_at(ev, r).value - exact) / exact);
  }
  bool zeros = true;
  for (double r : {1.0, 1.5, 10.0, 1e6}) zeros = zeros && psi_at(ev, r).value == 0.0;
  return result(worst < 1e-6 && zeros, Detail() << "max rel err " << worst << " on [0.05, 0.95] (< 1e-06); psi = 0 for r >= 1: "
                                              << (zeros ? "yes" : "no"));
}

// 2
CheckResult slit_hardy_number(AcceptanceContext& ctx) {
  const double h = estimate(ctx, "slit");
  return result(h >= 0.47 && h <= 0.53, Detail() << "h = " << h << " (expected in [0.47, 0.53])");
}

// 3
CheckResult sector_family(AcceptanceContext& ctx) {
  bool ok = true;
  Detail d;
  for (int divisor : {6, 4, 2, 1}) {
    const double expected = divisor / 2.0;
    const double h = estimate(ctx, "sector_pi/" + std::to_string(divisor));
    const double rel = std::abs(h - expected) / expected;
    ok = ok && rel < 0.05;
    d << "pi/" << divisor << ": h = " << h << " vs " << expected << "; ";
  }
  d << "tolerance 5%";
  return result(ok, d);
}

// 4
CheckResult polar_shortcut_check(AcceptanceContext&) {
  const DomainSpec spec(ComplementOf{{Point{{0.0, 0.0}}, Point{{1.0, 0.0}}, Point{{0.0, 2.0}}}}, {0.5, 0.5});
  const auto h = polar_shortcut(spec);
  if (!h) return result(false, Detail() << "polar complement not recognised");
  const auto b = estimate_bergman_numbers(*h, kAlphas);
  bool ok = h->value.value() == 0.0 && !h->value.is_infinite() && b.b.value() == 0.0;
  for (const auto& [alpha, v] : b.b_alpha) ok = ok && v.value() == 0.0 && !v.is_infinite();
  for (double alpha : kAlphas) ok = ok && polar_membership(SpaceParams::bergman(2.0, alpha)).non_member();
  return result(ok, Detail() << "h = " << h->value << ", b = " << b.b << ", b_alpha = 0 for alpha in {-0.5, 0, 1, 2}: "
                             << (ok ? "yes" : "no"));
}

// 5
CheckResult bounded_complement(AcceptanceContext& ctx) {
  const double ext = estimate(ctx, "exterior_disk");
  const double two = estimate(ctx, "two_disks");
  return result(ext <= 0.1 && two <= 0.1,
                Detail() << "exterior of disk: " << ext << "; two disks (walk on spheres): " << two << " (both <= 0.1)");
}

// 6
CheckResult wos_cross_validation(AcceptanceContext&) {
  const DomainSpec disk(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0});
  const DomainSpec ext(ExteriorOfDisk{{0.0, 0.0}, 1.0}, {2.0, 0.0});
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  WosConfig cfg;
  cfg.walks = 10000;
  int passed = 0, total = 0;
  for (int i = 0; i < 50; ++i) {
    const bool inside = i % 2 == 0;
    auto sample = [&] {
      const double th = 2.0 * kPi * unit(rng);
      const double rho = inside ? 0.9 * std::sqrt(unit(rng)) : 1.1 + 3.0 * unit(rng);
      return std::polar(rho, th);
    };
    Complex z = sample(), w0 = sample();
    while (std::abs(z - w0) < 0.05) w0 = sample();
    const DomainSpec& spec = inside ? disk : ext;
    cfg.seed = 1000 + static_cast<std::uint64_t>(i);
    const WosEstimate w = wos_green(spec, z, w0, cfg);
    const double exact = closed_form_green(spec, z, w0);
    ++total;
    if (std::abs(w.estimate - exact) <= 3.0 * w.stderr_ + 5.0 * cfg.epsilon_shell) ++passed;
  }
  const double rate = static_cast<double>(passed) / total;
  return result(rate >= 0.95, Detail() << passed << "/" << total << " pairs within 3 stderr + 5 eps (need >= 95%)");
}

// 7
CheckResult monotone_and_jensen(AcceptanceContext& ctx) {
  bool monotone = true;
  Detail d;
  std::size_t jensen_checked = 0, jensen_failed = 0;
  for (const std::string& key : AcceptanceContext::profile_keys()) {
    const ProfileRun& run = ctx.profile(key);
    const auto violations = check_monotone(run.profile);
    if (!violations.empty()) {
      monotone = false;
      d << key << ": " << violations.size() << " monotonicity violations; ";
    }
    for (double r : run.profile.radii) {
      for (const JensenSides& s : jensen_sides(run.evaluator, r, kAlphas, run.quad)) {
        ++jensen_checked;
        if (!s.holds()) ++jensen_failed;
      }
    }
  }
  d << AcceptanceContext::profile_keys().size() << " profiles monotone: " << (monotone ? "yes" : "no")
    << "; Jensen " << (jensen_checked - jensen_failed) << "/" << jensen_checked << " (radius, alpha) pairs hold";
  return result(monotone && jensen_failed == 0, d);
}

// 8
CheckResult area_integral_identity(AcceptanceContext&) {
  // The Cayley map onto the right half-plane, sending 0 to the base point 1.
  const auto f = AnalyticFunctionSpec::custom({"cayley", [](Complex z) { return (1.0 + z) / (1.0 - z); },
                                               [](Complex z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }, {}, true});
  const double p = 0.5;
  const double area = littlewood_paley_integral(f, p, 1.0, true);
  const auto spec = sector(kPi / 2.0);
  const auto profile = build_profile(GreenEvaluator::closed_form(spec), 1e-3, 1e7, 16);
  const double radial = psi_moment(profile, p, 1.0).total();
  const double rel = std::abs(area - radial) / radial;
  return result(rel < 0.02, Detail() << "area integral " << area << " vs radial integral " << radial
                                     << ", rel diff " << rel << " (< 2%)");
}

// 9
CheckResult membership_bracketing(AcceptanceContext& ctx) {
  const PsiProfile& prof = ctx.profile("slit").profile;
  const auto m04 = hardy_membership_via_psi(prof, 0.4);
  const auto m08 = hardy_membership_via_psi(prof, 0.8);
  const auto b20 = bergman_nonmembership_via_psi(prof, 2.0, 0.0);
  bool ok = m04.member() && m08.non_member() && b20.non_member();
  Detail d;
  d << "slit: H^0.4 " << to_string(m04.status) << ", H^0.8 " << to_string(m08.status) << ", A^2_0 "
    << to_string(b20.status) << "; Koebe square on p/(alpha+2) = 1/2:";
  const auto koebe = AnalyticFunctionSpec::koebe_square();
  for (double p : {1.0, 2.0, 4.0}) {
    const auto v = bgp_membership(koebe, p, 2.0 * p - 2.0);
    ok = ok && v.non_member();
    d << " p=" << p << " " << to_string(v.status);
  }
  return result(ok, d);
}

// 10
CheckResult extremal_family(AcceptanceContext&) {
  const ExtremalFab fab = make_extremal_map(2.0, 1.0);
  const bool c_ok = std::abs(fab.C - 30.44) / 30.44 < 5e-3;
  const bool margin_ok = std::abs(fab.margin_angle() - kPi / 4.0) <= 1e-12;
  const UnivalenceReport uni = check_univalence_sampled(fab, 10000);
  bool flip_ok = true;
  for (double p : {0.55, 0.75, 0.9, 0.99, 1.0, 1.01, 1.1, 1.5, 3.0}) {
    const bool member = classify_extremal_membership(fab, p, 2.0 * p - 2.0).member();
    flip_ok = flip_ok && member == (p > 1.0);
  }
  const ExtremalExponents e = extremal_pD(2.0, 1.0);
  const bool pd_ok = e.h == 0.5 && e.p_D == 1.0;
  Detail d;
  d << "C = " << fab.C << " (within 0.5% of 30.44: " << (c_ok ? "yes" : "no") << "), margin angle - pi/4 = " << fab.margin_angle() - kPi / 4.0
    << ", univalence on " << uni.samples << " samples: " << (uni.passed ? "pass" : "fail")
    << ", membership flips at p = 1: " << (flip_ok ? "yes" : "no") << ", h = " << e.h << ", p_D = " << e.p_D;
  return result(c_ok && margin_ok && uni.passed && flip_ok && pd_ok, d);
}

// 11
CheckResult lattice_checks(AcceptanceContext&) {
  auto q = [](long long n, long long d = 1) { return Exponent::ratio(n, d); };
  const auto remark = bergman_inclusion(q(5), q(2), q(2), q(0));
  bool ok = !remark.included && remark.rule == InclusionRule::ArevaloDown;
  // Case a: same p.
  ok = ok && bergman_inclusion(q(2), q(0), q(2), q(1)).included && !bergman_inclusion(q(2), q(1), q(2), q(0)).included;
  // Case b at equality is strict: (1+1)/4 = (0+1)/2.
  const auto b_eq = bergman_inclusion(q(4), q(1), q(2), q(0));
  ok = ok && !b_eq.included && b_eq.rule == InclusionRule::ArevaloDown &&
       bergman_inclusion(q(4), q(1, 2), q(2), q(0)).included;
  // Case c at equality is not strict: (0+2)/1 = (2+2)/2.
  const auto c_eq = bergman_inclusion(q(1), q(0), q(2), q(2));
  ok = ok && c_eq.included && c_eq.rule == InclusionRule::ArevaloUp && !bergman_inclusion(q(1), q(0), q(2), q(3, 2)).included;

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> small(1, 12), alpha_num(-5, 40), len(2, 5);
  int chains_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const Rational r(small(rng), small(rng));
    std::vector<Rational> alphas;
    const auto n = len(rng);
    while (static_cast<long long>(alphas.size()) < n) {
      const Rational a(alpha_num(rng), 6);
      if (a > -1) alphas.push_back(a);
    }
    std::sort(alphas.begin(), alphas.end());
    std::vector<std::pair<Exponent, Exponent>> chain;
    for (const Rational& a : alphas) chain.emplace_back(Exponent(Rational(r * (a + 2))), Exponent(a));
    if (kulikov_chain(Exponent(r), chain)) ++chains_ok;
  }
  ok = ok && chains_ok == 100;
  return result(ok, Detail() << "A^5_2 in A^2_0: " << (remark.included ? "included" : "not included") << " (" << remark.detail
                             << "); Arevalo boundary cases " << (ok ? "as expected" : "mismatch") << "; Kulikov chains "
                             << chains_ok << "/100");
}

// 12
CheckResult base_point_invariance(AcceptanceContext& ctx) {
  const double h1 = estimate(ctx, "slit");
  const double h2 = estimate(ctx, "slit_base_2+i");
  return result(std::abs(h1 - h2) < 0.02, Detail() << "h(base 1) = " << h1 << ", h(base 2+i) = " << h2 << ", difference "
                                                  << std::abs(h1 - h2) << " (< 0.02)");
}

}  // namespace

const ProfileRun& AcceptanceContext::profile(const std::string& key) {
  auto it = runs_.find(key);
  if (it == runs_.end()) it = runs_.emplace(key, make_run(key)).first;
  return *it->second;
}

const std::vector<std::string>& AcceptanceContext::profile_keys() {
  static const std::vector<std::string> keys{"disk",        "slit",        "sector_pi/6",   "sector_pi/4",
                                             "sector_pi/2", "sector_pi/1", "exterior_disk", "two_disks"};
  return keys;
}

const std::vector<AcceptanceCheck>& acceptance_checks() {
  static const std::vector<AcceptanceCheck> checks{
      {1, "disk psi closed form", disk_closed_form},
      {2, "slit plane Hardy number", slit_hardy_number},
      {3, "sector family", sector_family},
      {4, "polar complement shortcut", polar_shortcut_check},
      {5, "bounded complement", bounded_complement},
      {6, "walk-on-spheres cross-validation", wos_cross_validation},
      {7, "monotonicity and Jensen", monotone_and_jensen},
      {8, "area integral identity", area_integral_identity},
      {9, "membership bracketing", membership_bracketing},
      {10, "extremal family", extremal_family},
      {11, "inclusion lattice", lattice_checks},
      {12, "base-point invariance", base_point_invariance},
  };
  return checks;
}

std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(3);
  os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail << " ["
     << std::fixed << r.seconds << " s]";
  return os.str();
}

std::vector<CheckResult> run_acceptance(const std::set<int>& only, std::ostream& out) {
  AcceptanceContext ctx;
  std::vector<CheckResult> results;
  for (const AcceptanceCheck& check : acceptance_checks()) {
    if (!only.empty() && !only.count(check.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check.run(ctx);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.id = check.id;
    r.name = check.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << format_result(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace hardy
