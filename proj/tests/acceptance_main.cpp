#include <algorithm>
#include <iostream>
#include <set>

#include "hardy/acceptance.hpp"

int main() {
  const auto results = hardy::run_acceptance({}, std::cout);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
