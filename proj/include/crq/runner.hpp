#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crq/script.hpp"

namespace crq {

struct RunOptions {
  bool cross_oracle = true;
  std::size_t max_atoms = 20;
};

struct QueryOutcome {
  bool ok = false;
  std::string query;  // canonical echo
  std::string text;   // one-line human rendering
  nlohmann::ordered_json payload;
};

struct Report {
  std::vector<QueryOutcome> results;
  bool all_ok() const {
    for (const auto& r : results) {
      if (!r.ok) return false;
    }
    return true;
  }
};

/// Executes the script's queries in order. A failing query becomes an error
/// record; later queries still run.
Report run_script(const Script& script, const RunOptions& options = {});

}  // namespace crq
