#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "condtypes/error.hpp"

namespace condtypes {

using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline rat make_rat(long long num, long long den = 1) { return rat(num, den); }

// Canonical text form: "p" when the denominator is 1, otherwise "p/q" in
// lowest terms with q > 0. cpp_rational normalizes on construction, so
// formatting only needs to pick the shape.
inline std::string format_rat(const rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Strict parser for the manifest syntax: an optional leading '-', digits,
// optionally "/digits". Inputs must already be canonical ("2/4", "3/1",
// "1/0", "+1" and whitespace are all rejected) so that serialization is a
// byte-stable inverse.
std::optional<rat> try_parse_rat(const std::string& text);

inline rat parse_rat(const std::string& text) {
  auto r = try_parse_rat(text);
  if (!r) fail_parse("invalid rational literal: '" + text + "'");
  return *r;
}

}  // namespace condtypes
