#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

// Anything the numerics refuse to do; the CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public NumericError {
public:
  using NumericError::NumericError;
};

class UnsupportedCondition : public NumericError {
public:
  using NumericError::NumericError;
};

class PoleProximityError : public NumericError {
public:
  PoleProximityError(std::size_t bond, double omega)
      : NumericError("secular function evaluated at a tangent pole of bond " +
                     std::to_string(bond) + " (omega=" + std::to_string(omega) + ")"),
        bond_(bond) {}
  std::size_t bond() const { return bond_; }

private:
  std::size_t bond_;
};

// Fit samples outside 1/omega_max << t << min length. CLI exit code 4.
class WindowViolation : public NumericError {
public:
  using NumericError::NumericError;
};

class RankDeficientFit : public NumericError {
public:
  using NumericError::NumericError;
};

class OrbitCapExceeded : public NumericError {
public:
  OrbitCapExceeded(double estimate, std::size_t cap)
      : NumericError("orbit class count ~" + std::to_string(static_cast<long long>(estimate)) +
                     " exceeds cap " + std::to_string(cap)),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

private:
  double estimate_;
};

class StepTooLarge : public NumericError {
public:
  using NumericError::NumericError;
};

// Bad user input (files, flags). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace casimir
