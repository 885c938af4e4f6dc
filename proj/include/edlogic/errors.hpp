#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace edlogic {

// Base for every library error.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Malformed input data (bad JSON shape, dimension mismatch, bad number).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message) : Error("FormatError", message) {}
};

// A space axiom (PMet1-4, Prob1-2) failed; carries the offending points.
class AxiomViolation : public Error {
 public:
  AxiomViolation(std::string axiom, std::vector<std::string> witness, const std::string& detail)
      : Error("AxiomViolation", axiom + ": " + detail),
        axiom_(std::move(axiom)),
        witness_(std::move(witness)) {}
  const std::string& axiom() const { return axiom_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::string axiom_;
  std::vector<std::string> witness_;
};

class UnknownPoint : public Error {
 public:
  explicit UnknownPoint(const std::string& name) : Error("UnknownPoint", name) {}
};

class FrameTooLarge : public Error {
 public:
  explicit FrameTooLarge(const std::string& message) : Error("FrameTooLarge", message) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& message) : Error("EmptyInput", message) {}
};

class NonPositiveInput : public Error {
 public:
  explicit NonPositiveInput(const std::string& message) : Error("NonPositiveInput", message) {}
};

// A set-function table is not a doubt function; carries the first subset
// whose Moebius mass misbehaves.
class NotADoubtFunction : public Error {
 public:
  NotADoubtFunction(std::string subset, std::string value, const std::string& detail)
      : Error("NotADoubtFunction", detail + " (subset {" + subset + "}, value " + value + ")"),
        subset_(std::move(subset)),
        value_(std::move(value)) {}
  const std::string& subset() const { return subset_; }
  const std::string& value() const { return value_; }

 private:
  std::string subset_;
  std::string value_;
};

class InvalidMass : public Error {
 public:
  explicit InvalidMass(const std::string& message) : Error("InvalidMass", message) {}
};

class OutOfRange : public Error {
 public:
  explicit OutOfRange(const std::string& message) : Error("OutOfRange", message) {}
};

class InvalidJoint : public Error {
 public:
  explicit InvalidJoint(const std::string& message) : Error("InvalidJoint", message) {}
};

class EmptyComponentSet : public Error {
 public:
  explicit EmptyComponentSet(const std::string& message)
      : Error("EmptyComponentSet", message) {}
};

class UnknownComponent : public Error {
 public:
  explicit UnknownComponent(const std::string& message) : Error("UnknownComponent", message) {}
};

// Parse failure; position is a 0-based byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error("SyntaxError", "at " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(expected) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownToken : public Error {
 public:
  UnknownToken(std::size_t position, const std::string& text)
      : Error("UnknownToken", "at " + std::to_string(position) + ": '" + text + "'"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownProposition : public Error {
 public:
  explicit UnknownProposition(const std::string& name) : Error("UnknownProposition", name) {}
};

class DnfTooLarge : public Error {
 public:
  explicit DnfTooLarge(const std::string& message) : Error("DnfTooLarge", message) {}
};

class AtomBudgetExceeded : public Error {
 public:
  explicit AtomBudgetExceeded(const std::string& message)
      : Error("AtomBudgetExceeded", message) {}
};

class TooManyVariables : public Error {
 public:
  explicit TooManyVariables(const std::string& message) : Error("TooManyVariables", message) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message) : Error("ResourceLimit", message) {}
};

class ModelBudgetExceeded : public Error {
 public:
  explicit ModelBudgetExceeded(const std::string& message)
      : Error("ModelBudgetExceeded", message) {}
};

}  // namespace edlogic
