#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <locale>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "hardy/acceptance.hpp"
#include "hardy/analytic.hpp"
#include "hardy/domain_io.hpp"
#include "hardy/error.hpp"
#include "hardy/estimator.hpp"
#include "hardy/green.hpp"
#include "hardy/lattice.hpp"
#include "hardy/psi.hpp"

namespace hardy::cli {
namespace {

// key=value report with locale-independent numbers.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {
    old_locale_ = out_.imbue(std::locale::classic());
    old_precision_ = out_.precision(10);
  }
  ~Report() {
    out_.precision(old_precision_);
    out_.imbue(old_locale_);
  }
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;

  template <class T>
  void kv(const std::string& key, const T& value) {
    out_ << key << '=' << value << '\n';
  }
  void diagnostics(const std::vector<std::string>& lines) {
    if (lines.empty()) return;
    out_ << "diagnostics:\n";
    for (const auto& l : lines) out_ << "  " << l << '\n';
  }

 private:
  std::ostream& out_;
  std::locale old_locale_;
  std::streamsize old_precision_;
};

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

std::string complex_str(Complex z) { return "[" + num(z.real()) + ", " + num(z.imag()) + "]"; }

WosConfig wos_config(const CliConfig& c) {
  WosConfig cfg;
  if (c.walks) cfg.walks = *c.walks;
  if (c.seed) cfg.seed = *c.seed;
  if (c.epsilon_shell) cfg.epsilon_shell = *c.epsilon_shell;
  cfg.validate();
  return cfg;
}

GreenEvaluator make_evaluator(const CliConfig& c, const DomainSpec& spec) {
  switch (c.engine) {
    case Engine::ClosedForm:
      if (!spec.is_canonical())
        throw Error(ErrorKind::InvalidSpec, "the closed_form engine needs a canonical domain; use --engine wos");
      return GreenEvaluator::closed_form(spec);
    case Engine::Wos: return GreenEvaluator::wos(spec, wos_config(c));
    case Engine::Auto: break;
  }
  return GreenEvaluator::automatic(spec, wos_config(c));
}

QuadSettings quad_settings(const CliConfig& c) {
  QuadSettings q;
  if (c.wos_nodes) q.wos_nodes = *c.wos_nodes;
  return q;
}

EstimatorOptions estimator_options(const CliConfig& c) {
  EstimatorOptions o;
  o.slope_tol = c.slope_tol;
  o.infinity_cap = c.infinity_cap;
  return o;
}

struct Grid {
  double r_min;
  double r_max;
};

Grid grid_for(const CliConfig& c, const DomainSpec& spec) {
  const double d = distance_to_nonpolar_complement(spec, spec.base_point());
  return {c.r_min.value_or(0.5 * d), c.r_max.value_or(1e5 * complement_reach(spec))};
}

PsiProfile profile_for(const CliConfig& c, const DomainSpec& spec) {
  const GreenEvaluator ev = make_evaluator(c, spec);
  const Grid g = grid_for(c, spec);
  return build_profile(ev, g.r_min, g.r_max, c.points_per_decade, quad_settings(c));
}

void domain_header(Report& rep, const DomainSpec& spec) {
  rep.kv("domain", spec.kind_name());
  rep.kv("base_point", complex_str(spec.base_point()));
}

void profile_header(Report& rep, const PsiProfile& p) {
  rep.kv("engine", p.engine);
  rep.kv("r_min", p.radii.front());
  rep.kv("r_max", p.radii.back());
  rep.kv("radii", p.size());
}

std::vector<std::string> window_lines(const NumberEstimate& e) {
  std::vector<std::string> lines;
  for (const auto& w : e.window_slopes)
    lines.push_back("window [" + num(w.r_lo) + ", " + num(w.r_hi) + "] slope " + num(w.slope));
  return lines;
}

void verdict_report(Report& rep, const MembershipVerdict& v, double slope_tol) {
  rep.kv("status", to_string(v.status));
  rep.kv("margin", v.margin);
  rep.kv("exact", v.exact ? "true" : "false");
  rep.kv("rule", v.rule);
  if (!v.exact) rep.kv("tolerance", slope_tol);
  std::vector<std::string> lines;
  for (const auto& [k, x] : v.diagnostics) lines.push_back(k + " = " + num(x));
  rep.diagnostics(lines);
}

int cmd_psi(const CliConfig& c, std::ostream& out) {
  const DomainSpec spec = load_domain_spec(c.domain_path);
  const PsiProfile p = profile_for(c, spec);
  if (c.output_path.empty()) {
    write_profile_csv(out, p);
  } else {
    std::ofstream file(c.output_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + c.output_path + "'");
    write_profile_csv(file, p);
  }
  return 0;
}

NumberEstimate hardy_estimate(const CliConfig& c, const DomainSpec& spec, Report& rep) {
  if (auto polar = polar_shortcut(spec)) {
    rep.kv("engine", "none (polar complement)");
    return *polar;
  }
  const PsiProfile p = profile_for(c, spec);
  profile_header(rep, p);
  return estimate_hardy_number(p, estimator_options(c));
}

int cmd_hardy(const CliConfig& c, std::ostream& out) {
  const DomainSpec spec = load_domain_spec(c.domain_path);
  Report rep(out);
  domain_header(rep, spec);
  const NumberEstimate e = hardy_estimate(c, spec, rep);
  rep.kv("h", e.value);
  rep.kv("method", to_string(e.method));
  rep.kv("confidence", e.confidence);
  rep.kv("slope_tol", c.slope_tol);
  if (e.zero_tail) rep.kv("zero_tail", "true");
  rep.diagnostics(window_lines(e));
  return 0;
}

int cmd_bergman(const CliConfig& c, std::ostream& out) {
  const DomainSpec spec = load_domain_spec(c.domain_path);
  Report rep(out);
  domain_header(rep, spec);
  const NumberEstimate e = hardy_estimate(c, spec, rep);
  const BergmanNumbers b = estimate_bergman_numbers(e, c.alphas);
  rep.kv("h", e.value);
  rep.kv("b", b.b);
  for (const auto& [alpha, v] : b.b_alpha) rep.kv("b_alpha[" + num(alpha) + "]", v);
  rep.kv("method", to_string(e.method));
  rep.kv("confidence", e.confidence);
  rep.diagnostics(window_lines(e));
  return 0;
}

bool looks_like_function(const std::string& target) {
  for (const char* prefix : {"power:", "fab:"}) {
    if (target.rfind(prefix, 0) == 0) return true;
  }
  return target == "koebe2" || target == "koebe_square" || target == "identity";
}

int cmd_member(const CliConfig& c, std::ostream& out) {
  const SpaceParams space = SpaceParams::parse(c.space);
  Report rep(out);
  rep.kv("space", space.str());
  MembershipVerdict v;
  if (!c.function.empty()) {
    const AnalyticFunctionSpec f = AnalyticFunctionSpec::parse(c.function);
    rep.kv("function", f.name());
    if (space.is_hardy()) {
      v = lp_hardy_membership(f, space.p());
    } else if (f.is_univalent()) {
      v = bgp_membership(f, space.p(), space.alpha());
    } else {
      v = lp_bergman_membership(f, space.p(), space.alpha());
    }
  } else {
    const DomainSpec spec = load_domain_spec(c.domain_path);
    domain_header(rep, spec);
    if (is_polar_complement(spec)) {
      v = polar_membership(space);
    } else {
      const PsiProfile p = profile_for(c, spec);
      profile_header(rep, p);
      v = space.is_hardy() ? hardy_membership_via_psi(p, space.p(), estimator_options(c))
                           : bergman_nonmembership_via_psi(p, space.p(), space.alpha(), estimator_options(c));
    }
  }
  verdict_report(rep, v, c.slope_tol);
  return v.status == MembershipStatus::Inconclusive ? 1 : 0;
}

const char* rule_wording(InclusionRule r) {
  switch (r) {
    case InclusionRule::HardyOrder: return "Hardy order";
    case InclusionRule::DurenEmbedding: return "Duren embedding";
    case InclusionRule::ArevaloEq: return "Arevalo case a";
    case InclusionRule::ArevaloDown: return "Arevalo case b";
    case InclusionRule::ArevaloUp: return "Arevalo case c";
    case InclusionRule::KulikovLine: return "Kulikov line";
  }
  return "?";
}

struct ParsedSpace {
  Exponent p;
  std::optional<Exponent> alpha;
  SpaceParams params;
};

ParsedSpace parse_exponents(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const Exponent p = Exponent::parse(text);
    return {p, std::nullopt, SpaceParams::hardy(p.value())};
  }
  const Exponent p = Exponent::parse(text.substr(0, colon));
  const Exponent alpha = Exponent::parse(text.substr(colon + 1));
  return {p, alpha, SpaceParams::bergman(p.value(), alpha.value())};
}

int cmd_include(const CliConfig& c, std::ostream& out) {
  const ParsedSpace from = parse_exponents(c.include_from);
  const ParsedSpace to = parse_exponents(c.include_to);
  Report rep(out);
  rep.kv("from", from.params.str());
  rep.kv("to", to.params.str());
  std::optional<InclusionVerdict> v;
  if (from.alpha && to.alpha) {
    v = bergman_inclusion(from.p, *from.alpha, to.p, *to.alpha);
  } else if (!from.alpha && !to.alpha) {
    const bool in = hardy_inclusion(from.p, to.p);
    v = InclusionVerdict{in, InclusionRule::HardyOrder, "p = " + to.p.str() + (in ? " <= " : " > ") + "q = " + from.p.str()};
  } else if (!from.alpha) {
    if (hardy_in_bergman(from.p, to.p, *to.alpha)) {
      v = InclusionVerdict{true, InclusionRule::DurenEmbedding,
                           "q = " + from.p.str() + " >= p/(alpha+2) = " + shifted_ratio(to.p, 0, shifted_ratio(*to.alpha, 2, Exponent(1.0))).str()};
    }
  }
  if (!v) {
    rep.kv("result", "undecided (no inclusion rule applies; this is not a proof of non-inclusion)");
    return 1;
  }
  rep.kv("result", std::string(v->included ? "included" : "not included") + " (" + rule_wording(v->rule) + ")");
  rep.kv("rule", to_string(v->rule));
  rep.kv("detail", v->detail);
  return 0;
}

int cmd_extremal(const CliConfig& c, std::ostream& out) {
  const ExtremalFab fab = make_extremal_map(c.a, c.b);
  const ExtremalExponents e = extremal_pD(c.a, c.b);
  const UnivalenceReport u = check_univalence_sampled(fab, c.samples);
  Report rep(out);
  rep.kv("a", c.a);
  rep.kv("b", c.b);
  rep.kv("C", fab.C);
  rep.kv("margin_angle", fab.margin_angle());
  rep.kv("h", e.h);
  rep.kv("p_D", e.p_D);
  rep.kv("univalence", u.passed ? "pass" : "fail");
  rep.diagnostics({"samples " + std::to_string(u.samples), "min Re F'(w) " + num(u.min_real_derivative),
                   std::string("reflection symmetry ") + (u.reflection_ok ? "ok" : "violated")});
  return u.passed ? 0 : 1;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  const std::set<int> only(c.only.begin(), c.only.end());
  const auto results = run_acceptance(only, out);
  const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
  out << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed\n";
  return failed == 0 && !results.empty() ? 0 : 1;
}

}  // namespace

void CliConfig::validate() const {
  const bool wos_params = walks || seed || epsilon_shell || wos_nodes;
  if (engine == Engine::ClosedForm && wos_params)
    throw Error(ErrorKind::InvalidSpec, "walk-on-spheres options need --engine wos or auto");
  if (r_min && r_max && !(*r_min < *r_max)) throw Error(ErrorKind::InvalidSpec, "--r-min must be below --r-max");
  if (points_per_decade < 4) throw Error(ErrorKind::InvalidSpec, "--ppd must be at least 4");
  if (command == "member" && function.empty() == domain_path.empty())
    throw Error(ErrorKind::InvalidSpec, "member needs exactly one target: a domain spec file or a function");
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    if (config.command == "psi") return cmd_psi(config, out);
    if (config.command == "hardy") return cmd_hardy(config, out);
    if (config.command == "bergman") return cmd_bergman(config, out);
    if (config.command == "member") return cmd_member(config, out);
    if (config.command == "include") return cmd_include(config, out);
    if (config.command == "extremal") return cmd_extremal(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    err << "error: unknown command '" << config.command << "'\n";
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Estimation ? 1 : 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Hardy and Bergman numbers of planar domains"};
  app.require_subcommand(1);

  const std::map<std::string, Engine> engines{
      {"auto", Engine::Auto}, {"closed_form", Engine::ClosedForm}, {"wos", Engine::Wos}};
  auto domain_options = [&](CLI::App* sub, bool required) {
    auto* d = sub->add_option("--domain,-d", c.domain_path, "Domain spec file (JSON)");
    if (required) d->required();
    sub->add_option("--engine", c.engine, "Green function backend: auto, closed_form or wos")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case).description(""))
        ->type_name("auto|closed_form|wos");
    sub->add_option("--r-min", c.r_min, "Smallest radius of the grid");
    sub->add_option("--r-max", c.r_max, "Largest radius of the grid");
    sub->add_option("--ppd", c.points_per_decade, "Grid points per decade");
    sub->add_option("--walks", c.walks, "Walks per Green function evaluation");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--epsilon", c.epsilon_shell, "Absorption shell width");
    sub->add_option("--wos-nodes", c.wos_nodes, "Quadrature nodes per circle for walk on spheres");
    sub->add_option("--slope-tol", c.slope_tol, "Undecided band around critical exponents");
    sub->add_option("--infinity-cap", c.infinity_cap, "Slopes above this are reported as inf");
  };

  auto* psi = app.add_subcommand("psi", "Write the psi profile as CSV");
  domain_options(psi, true);
  psi->add_option("--output,-o", c.output_path, "CSV output file (default: stdout)");

  auto* hardy = app.add_subcommand("hardy", "Estimate the Hardy number of a domain");
  domain_options(hardy, true);

  auto* bergman = app.add_subcommand("bergman", "Estimate the Bergman numbers of a domain");
  domain_options(bergman, true);
  bergman->add_option("--alpha", c.alphas, "Weights alpha > -1")->delimiter(',');

  auto* member = app.add_subcommand("member", "Decide membership of a covering map or function in a space");
  domain_options(member, false);
  member->add_option("--space", c.space, "H:p or A:p:alpha")->required();
  std::string target;
  member->add_option("--target", target, "Domain spec file, or a function: power:a, koebe2, identity, fab:a:b[:C]");
  member->add_option("--function,-f", c.function, "Function: power:a, koebe2, identity, fab:a:b[:C]");

  auto* include = app.add_subcommand("include", "Decide an inclusion between Hardy/Bergman spaces");
  include->add_option("--from", c.include_from, "p (Hardy) or p:alpha (Bergman)")->required();
  include->add_option("--to", c.include_to, "q (Hardy) or q:beta (Bergman)")->required();

  auto* extremal = app.add_subcommand("extremal", "Constant, exponents and univalence check of f_{a,b}");
  extremal->add_option("--a", c.a, "Exponent a in (0, 2]")->required();
  extremal->add_option("--b", c.b, "Exponent b in (0, a]")->required();
  extremal->add_option("--samples", c.samples, "Univalence samples");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--only", c.only, "Comma-separated criterion numbers")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (!target.empty()) {
    if (looks_like_function(target)) {
      c.function = target;
    } else {
      c.domain_path = target;
    }
  }
  return run(c, out, err);
}

}  // namespace hardy::cli
