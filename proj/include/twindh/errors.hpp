#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twindh {

/// Bad caller input: out-of-range ids, violated preconditions, size caps.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not follow one of the module file formats.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Exponential routine refused because the input exceeds its vertex cap.
class CapExceeded : public InputError {
public:
  CapExceeded(const std::string& routine, int n, int cap)
      : InputError(routine + ": " + std::to_string(n) + " vertices exceeds cap of " +
                   std::to_string(cap)),
        cap_(cap) {}

  int cap() const noexcept { return cap_; }

private:
  int cap_;
};

/// A pruning sequence breaks its structural invariants.
class MalformedSequence : public std::runtime_error {
public:
  MalformedSequence(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// A certificate was supplied but does not certify the given digraph.
class CertificateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A structural claim that should hold for class members was found violated.
class InternalInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace twindh
