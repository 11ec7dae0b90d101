#include "condtypes/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace condtypes {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// No leading zeros except the literal "0" itself.
bool canonical_digits(const std::string& s, size_t from, size_t to) {
  if (!all_digits(s, from, to)) return false;
  return s[from] != '0' || to - from == 1;
}

}  // namespace

std::optional<rat> try_parse_rat(const std::string& text) {
  size_t start = 0;
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    start = 1;
  }
  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!canonical_digits(text, start, text.size())) return std::nullopt;
    bigint num(text.substr(start));
    if (negative && num == 0) return std::nullopt;
    return rat(negative ? bigint(-num) : num);
  }
  if (slash <= start || slash + 1 >= text.size()) return std::nullopt;
  if (!canonical_digits(text, start, slash)) return std::nullopt;
  if (!canonical_digits(text, slash + 1, text.size())) return std::nullopt;
  bigint num(text.substr(start, slash - start));
  bigint den(text.substr(slash + 1));
  if (den <= 1) return std::nullopt;  // "p/0" invalid, "p/1" must be written "p"
  if (gcd(num, den) != 1) return std::nullopt;
  if (negative && num == 0) return std::nullopt;
  return rat(negative ? bigint(-num) : num, den);
}

}  // namespace condtypes
