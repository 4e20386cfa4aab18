#pragma once

// The consolidated property audit behind `audit-all`: deterministic and
// seeded randomized checks across every module, one line item per
// property.

#include <cstdint>
#include <string>
#include <vector>

namespace diophlab::cli {

enum class Injection { none, realise_tiebreak };

struct AuditConfig {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  Injection inject = Injection::none;
};

struct AuditItem {
  std::string id;
  std::string statement;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string witness;
  bool ok() const { return checks > 0 && failures == 0; }
};

/// Items in a fixed order; the result depends only on the config.
std::vector<AuditItem> run_audit(const AuditConfig& cfg);

}  // namespace diophlab::cli
