#include "linkblend/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "linkblend/errors.hpp"

namespace linkblend {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& context) {
  if (token.empty()) throw ParseError(context + ": empty numeric field");
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ParseError(context + ": malformed number '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw ParseError(context + ": non-finite value '" + std::string(token) + "'");
  return value;
}

long long parse_integer(std::string_view token, const std::string& context) {
  if (token.empty()) throw ParseError(context + ": empty integer field");
  long long value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ParseError(context + ": malformed integer '" + std::string(token) + "'");
  return value;
}

}  // namespace linkblend
