#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tileasm {

// Malformed or out-of-domain input: bad files, invalid positions, unstable seeds.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OccupiedError : public InputError {
 public:
  using InputError::InputError;
};

class AttachmentError : public std::runtime_error {
 public:
  AttachmentError(const std::string& what, int strength, int temperature)
      : std::runtime_error(what), strength(strength), temperature(temperature) {}
  int strength;
  int temperature;
};

// A sequence step that cannot be replayed; index is zero-based.
class SequenceError : public std::runtime_error {
 public:
  SequenceError(std::size_t index, const std::string& why)
      : std::runtime_error("step " + std::to_string(index) + ": " + why), index(index) {}
  std::size_t index;
};

class ReconcileError : public std::runtime_error {
 public:
  ReconcileError(std::string clause, const std::string& why)
      : std::runtime_error(clause + ": " + why), clause(std::move(clause)) {}
  std::string clause;
};

class PumpError : public std::runtime_error {
 public:
  PumpError(std::size_t step, const std::string& why)
      : std::runtime_error("pump failed at step " + std::to_string(step) + ": " + why), step(step) {}
  std::size_t step;
};

class InvalidRepresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tileasm
