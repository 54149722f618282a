#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace crq {

/// Exact rational number. All engine arithmetic is exact; nothing is ever
/// rounded to floating point.
using Rat = boost::multiprecision::mpq_rational;

/// Parses "num", "num/den" or "-num/den". Returns nullopt on malformed input
/// or zero denominator. The result is always in canonical lowest terms.
std::optional<Rat> parse_rational(const std::string& text);

/// Renders as "num/den" in lowest terms, always with an explicit denominator
/// (e.g. "1/1", "0/1", "39/616").
std::string to_fraction(const Rat& value);

inline bool in_unit_interval(const Rat& value) {
  return value >= 0 && value <= 1;
}

}  // namespace crq
