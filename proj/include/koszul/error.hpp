#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

enum class ErrorKind {
    syntax,      // malformed input text
    validation,  // well-formed input violating a structural invariant
    window,      // requested degree/length outside the certified window
    resource,    // configurable cap exceeded
    internal,    // broken internal invariant (exactness, lift consistency)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace koszul
