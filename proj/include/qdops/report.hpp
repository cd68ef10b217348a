#ifndef QDOPS_REPORT_HPP
#define QDOPS_REPORT_HPP

#include <algorithm>
#include <string>
#include <vector>

namespace qdops {

/// One named exact check, with how many instances were tested.
struct CheckResult {
  std::string name;
  bool pass = true;
  long cases = 1;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }

  /// Records a check; `detail` is kept only for failures.
  void add(std::string name, bool pass, long cases = 1, std::string detail = {}) {
    checks.push_back({std::move(name), pass, cases, pass ? std::string() : std::move(detail)});
  }
};

}  // namespace qdops

#endif  // QDOPS_REPORT_HPP
