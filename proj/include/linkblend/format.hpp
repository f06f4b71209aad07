#ifndef LINKBLEND_FORMAT_HPP
#define LINKBLEND_FORMAT_HPP

#include <string>
#include <string_view>

namespace linkblend {

// Shortest decimal string that round-trips the double exactly; used by every
// TSV writer so rereading a file reproduces the values bit-for-bit.
std::string format_double(double value);

// Strict full-token parse; throws ParseError (with `context` in the message)
// on trailing garbage, empty tokens, or non-finite values.
double parse_double(std::string_view token, const std::string& context);
long long parse_integer(std::string_view token, const std::string& context);

}  // namespace linkblend

#endif  // LINKBLEND_FORMAT_HPP
