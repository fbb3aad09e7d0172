#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bvp4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Boundary data violates (C2) or (C3). `condition()` names the violated one.
class StructuralError : public Error {
 public:
  StructuralError(std::string condition, const std::string& what)
      : Error("(" + condition + ") " + what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinity produced where a finite value is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier, arity };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double last_residual, int iterations)
      : Error(what), last_residual_(last_residual), iterations_(iterations) {}
  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double sup_norm)
      : Error(what), sup_norm_(sup_norm) {}
  double sup_norm() const noexcept { return sup_norm_; }

 private:
  double sup_norm_;
};

class SingularJacobianError : public Error {
 public:
  using Error::Error;
};

/// Problem configuration file is malformed; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : "config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace bvp4
