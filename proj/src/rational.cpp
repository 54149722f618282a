#include "crq/rational.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cctype>

namespace crq {

using Int = boost::multiprecision::mpz_int;

namespace {

bool parse_integer(const std::string& text, Int* out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  *out = Int(text);
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  Int num;
  if (slash == std::string::npos) {
    if (!parse_integer(text, &num)) return std::nullopt;
    return Rat(num);
  }
  Int den;
  if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
  if (den == 0) return std::nullopt;
  return Rat(num) / Rat(den);
}

std::string to_fraction(const Rat& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace crq
