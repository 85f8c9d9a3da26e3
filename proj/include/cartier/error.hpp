#pragma once

#include <stdexcept>
#include <string>

namespace cartier {

enum class ErrorKind {
  invalid_input,  // malformed or mathematically invalid arguments
  unsupported,    // valid request outside the supported model (even-degree f)
  budget,         // exhaustive space larger than the configured cap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input:
      return "invalid-input";
    case ErrorKind::unsupported:
      return "unsupported";
    case ErrorKind::budget:
      return "budget-exceeded";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cartier
