#pragma once

#include <string>
#include <vector>

namespace asymq {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

// pmf-oracle, typeI, typeII, refined, infospec, activation.
const std::vector<std::string>& suite_names();
// One of suite_names() or "all".
bool is_known_suite(const std::string& name);
// Throws DomainError on an unknown name.
std::vector<CheckResult> run_suite(const std::string& name);

}  // namespace asymq
