#pragma once

#include <stdexcept>
#include <string>

namespace targettox {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Format,
  Config,
  Numeric,
  Data,
  Threshold,
};

// Every failure raised by the core library carries one of these kinds so the
// C boundary can map it to a stable status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace targettox
