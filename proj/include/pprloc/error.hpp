#pragma once

#include <stdexcept>
#include <string>

namespace pprloc {

/// Broad failure classes. The C API and the CLI map these onto status codes
/// and exit codes respectively.
enum class ErrorKind {
  Parse,      ///< malformed input document
  Domain,     ///< argument outside the operation's domain
  Contract,   ///< precondition of an operation violated by the caller
  Numerical,  ///< solver breakdown, structure failure, non-convergence
  Io,         ///< file could not be read
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  /// `line` is 1-based; 0 means the error is not tied to a line.
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::Parse, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// n = 1: the attainable set collapses to {1} and there is no open interval.
class DegenerateIntervalError : public DomainError {
public:
  DegenerateIntervalError()
      : DomainError("degenerate interval: a single-node graph always has PageRank 1") {}
};

class ContractError : public Error {
public:
  explicit ContractError(const std::string& what) : Error(ErrorKind::Contract, what) {}
};

/// Numerical failures carry a short machine-readable tag ("non_convergence",
/// "solver_residual", "structure", "oracle_mismatch", "unreachable",
/// "margin") and the most relevant scalar (residual, deviation, ...).
class NumericalError : public Error {
public:
  NumericalError(std::string tag, const std::string& what, double value = 0.0)
      : Error(ErrorKind::Numerical, what), tag_(std::move(tag)), value_(value) {}

  const std::string& tag() const noexcept { return tag_; }
  double value() const noexcept { return value_; }

private:
  std::string tag_;
  double value_;
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace pprloc
