#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rx2dpl {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed regex input. `position` is a byte offset into the source.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// A well-formed construct that lies outside the supported subset
/// (backreferences, lookbehind, mode modifiers, ...).
class UnsupportedFeature : public SyntaxError {
 public:
  UnsupportedFeature(std::size_t position, const std::string& feature);

  const std::string& feature() const noexcept { return feature_; }

 private:
  std::string feature_;
};

class StepLimitExceeded : public Error {
 public:
  explicit StepLimitExceeded(std::size_t budget);
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// Raised by the automata compiler for constructs with no finite-automaton
/// counterpart (lookahead).
class NonRegularFeature : public Error {
 public:
  explicit NonRegularFeature(const std::string& feature);
  const std::string& feature() const noexcept { return feature_; }

 private:
  std::string feature_;
};

class EmptyLanguage : public Error {
 public:
  EmptyLanguage();
};

class EmptyPattern : public Error {
 public:
  EmptyPattern();
};

class DplSyntaxError : public Error {
 public:
  DplSyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

}  // namespace rx2dpl
