#pragma once

#include <stdexcept>
#include <string>

namespace lgorb {

enum class ErrorKind {
  ConductorMismatch,
  DivisionByZero,
  Parse,
  Model,
  Equivariance,
  Construction,
  GradingRequired,
  Resource,
  Contract,
  Input,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this exception. `module()`
/// names the subsystem that detected the violated invariant.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

private:
  ErrorKind kind_;
  std::string module_;
};

/// Parse failures carry the byte offset into the offending text.
class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse, "poly", what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace lgorb
