#include "crq/report.hpp"

#include <sstream>

namespace crq {

namespace {

constexpr int kSchemaVersion = 1;

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    for (const auto& r : report.results) out << r.text << "\n";
    return out.str();
  }

  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json entry;
    entry["query"] = r.query;
    entry["status"] = r.ok ? "ok" : "error";
    entry["result"] = r.payload;
    results.push_back(std::move(entry));
  }
  j["results"] = std::move(results);
  return j.dump(2) + "\n";
}

}  // namespace crq
