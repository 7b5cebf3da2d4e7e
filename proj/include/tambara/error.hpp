#pragma once

#include <stdexcept>
#include <string>

namespace tambara {

/// Arithmetic that has no answer: division by zero, inverting 0.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller combined things that do not belong together (mismatched fields,
/// automorphism kind on the wrong backend, malformed descriptors).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold for its input.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A transfer, norm or Weyl translate left the target level. The witness is a
/// JSON rendering of the offending element.
class ClosureViolation : public std::runtime_error {
 public:
  ClosureViolation(std::string check, std::string witness, const std::string& message)
      : std::runtime_error(message), check_(std::move(check)), witness_(std::move(witness)) {}

  const std::string& check() const noexcept { return check_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string check_;
  std::string witness_;
};

/// Gluing data that violates one of the three compatibility criteria.
class GlueError : public std::invalid_argument {
 public:
  GlueError(int criterion, const std::string& message)
      : std::invalid_argument("criterion (" + std::to_string(criterion) + "): " + message),
        criterion_(criterion) {}

  int criterion() const noexcept { return criterion_; }

 private:
  int criterion_;
};

/// Two internal routes to the same quantity disagreed.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tambara
