#ifndef CONGAMES_ERRORS_HPP
#define CONGAMES_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace congames {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed in something that does not satisfy an operation's
// precondition (unknown event, non-configuration, mismatched games...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An enumeration exceeded the configured ceiling.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what, std::size_t ceiling)
      : Error(what), ceiling_(ceiling) {}
  std::size_t ceiling() const { return ceiling_; }

 private:
  std::size_t ceiling_;
};

// A typing rule of the strategy language was violated.
class TypeError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Something that "cannot happen" happened (e.g. copy-cat order with a cycle).
class InternalError : public Error {
 public:
  using Error::Error;
};

// One failed check. `rule` is a short stable key, `detail` is prose and
// `witness` lists the event identifiers / sets that exhibit the failure.
struct Violation {
  std::string rule;
  std::string detail;
  std::vector<std::string> witness;
};

using Report = std::vector<Violation>;

inline bool ok(const Report& r) { return r.empty(); }

// Global enumeration ceiling (default 10^6 configurations / matches).
std::size_t enumeration_ceiling();
void set_enumeration_ceiling(std::size_t ceiling);

}  // namespace congames

#endif  // CONGAMES_ERRORS_HPP
