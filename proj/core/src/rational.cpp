#include "rcpoly/rational.hpp"

#include <cctype>
#include <string>

#include "rcpoly/error.hpp"

namespace rcpoly {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  bool ok = is_integer_literal(num) &&
            (slash == std::string_view::npos || (is_integer_literal(den) && den.front() != '-'));
  if (!ok) throw FormatError("not a rational: '" + std::string(text) + "'");

  Rational r;
  r.get_num() = BigInt(std::string(num));
  r.get_den() = slash == std::string_view::npos ? BigInt(1) : BigInt(std::string(den));
  if (r.get_den() == 0) throw FormatError("zero denominator: '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::vector<Rational> parse_rationals(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return out;
}

std::vector<std::string> to_strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace rcpoly
