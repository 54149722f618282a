#pragma once

#include <string>

#include "crq/runner.hpp"

namespace crq {

enum class ReportFormat { Text, Json };

/// Deterministic report rendering: text mode is one line per query, json
/// mode is schema-versioned and byte-stable for identical scripts.
std::string render_report(const Report& report, ReportFormat format);

}  // namespace crq
