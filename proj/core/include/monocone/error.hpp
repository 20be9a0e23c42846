#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace monocone {

enum class ErrorKind {
  kNotReflexive,
  kNotAntisymmetric,
  kNotTransitive,
  kSizeLimitExceeded,
  kDimensionMismatch,
  kNotPointed,
  kZeroVector,
  kZeroToleranceViolation,
  kEpsilonTooLarge,
  kNotMonotone,
  kNotIrreducible,
  kParseError,
  kNoInducedEmbedding,
  kCaseNotApplicable,
  kMismatch,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// A violated poset axiom together with the elements that witness it
/// (one index for reflexivity, a pair for antisymmetry, a triple for
/// transitivity).
class PosetAxiomError : public Error {
 public:
  PosetAxiomError(ErrorKind kind, std::vector<int> witness);

  const std::vector<int>& witness() const { return witness_; }

 private:
  std::vector<int> witness_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class NotIrreducibleError : public Error {
 public:
  explicit NotIrreducibleError(std::vector<std::vector<int>> classes);

  /// Communicating classes of the chain, each sorted ascending.
  const std::vector<std::vector<int>>& classes() const { return classes_; }

 private:
  std::vector<std::vector<int>> classes_;
};

}  // namespace monocone
