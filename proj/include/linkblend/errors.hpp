#ifndef LINKBLEND_ERRORS_HPP
#define LINKBLEND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linkblend {

// Invalid argument to an operation (bad node id, out-of-range fraction, ...).
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; message carries the offending line/row number.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampling request exceeds what the instance can provide.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training diverged or produced non-finite values.
struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem trouble (missing file, unwritable directory).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace linkblend

#endif  // LINKBLEND_ERRORS_HPP
