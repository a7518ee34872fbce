#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace piclab::model {

// Base for failures of a protocol run (as opposed to bad configuration).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The protocol broke a rule of the execution model.
class ModelViolation : public ModelError {
 public:
  using ModelError::ModelError;
};

class Deadlock : public ModelViolation {
 public:
  using ModelViolation::ModelViolation;
};

class SelfDelimitingViolation : public ModelViolation {
 public:
  using ModelViolation::ModelViolation;
};

class NonTermination : public ModelError {
 public:
  using ModelError::ModelError;
};

class NotOblivious : public ModelError {
 public:
  using ModelError::ModelError;
};

class BudgetExceeded : public ModelError {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : ModelError("enumeration needs " + std::to_string(required) +
                   " executions, budget is " + std::to_string(budget)),
        required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

// Malformed user input: bad parameters, unreadable files, inconsistent
// protocol descriptions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace piclab::model
