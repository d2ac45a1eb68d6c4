#pragma once

#include <string>
#include <vector>

namespace finq {

// One verified identity: which check, where it comes from in the source
// material, how large the residual was and what it was allowed to be.
struct CheckRecord {
  std::string check_id;
  std::string anchor;  // e.g. "Thm 4.4"
  double residual = 0.0;
  double threshold = 0.0;
  double wall_time = 0.0;

  bool pass() const { return residual <= threshold; }
};

struct Report {
  std::vector<CheckRecord> checks;

  void add(std::string id, std::string anchor, double residual, double threshold) {
    checks.push_back({std::move(id), std::move(anchor), residual, threshold, 0.0});
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
  double worst() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }
};

}  // namespace finq
