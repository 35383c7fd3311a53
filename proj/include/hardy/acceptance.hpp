#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hardy/green.hpp"
#include "hardy/psi.hpp"

namespace hardy {

/// A profile together with the evaluator that produced it.
struct ProfileRun {
  std::string label;
  GreenEvaluator evaluator;
  PsiProfile profile;
  QuadSettings quad;
};

/// Shared state between checks, so profiles are built once per suite run.
class AcceptanceContext {
 public:
  const ProfileRun& profile(const std::string& key);
  /// Keys of the profiles used by the domain checks, in registration order.
  static const std::vector<std::string>& profile_keys();

 private:
  std::map<std::string, std::unique_ptr<ProfileRun>> runs_;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceCheck {
  int id;
  std::string name;
  std::function<CheckResult(AcceptanceContext&)> run;
};

const std::vector<AcceptanceCheck>& acceptance_checks();

/// Runs the selected checks (all when `only` is empty), printing one line per check to `out`.
/// An exception inside a check counts as a failure.
std::vector<CheckResult> run_acceptance(const std::set<int>& only, std::ostream& out);

std::string format_result(const CheckResult& r);

}  // namespace hardy
