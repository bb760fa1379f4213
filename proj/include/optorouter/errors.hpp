#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace optorouter {

/// Root of every exception thrown by the library. `kind()` is a stable,
/// machine-readable tag (e.g. "NonConvergence") used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Invalid parameters or configuration.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("ValidationError", message) {}

 protected:
  ValidationError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

/// A numerical procedure failed on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& message, double last_residual)
      : NumericalError("NonConvergence", message), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Distinct steady states were reached from distinct seeds.
class Multistability : public NumericalError {
 public:
  Multistability(const std::string& message,
                 std::vector<std::complex<double>> alphas)
      : NumericalError("Multistability", message), alphas_(std::move(alphas)) {}
  const std::vector<std::complex<double>>& alphas() const noexcept { return alphas_; }

 private:
  std::vector<std::complex<double>> alphas_;
};

class NotAttainable : public NumericalError {
 public:
  explicit NotAttainable(const std::string& message)
      : NumericalError("NotAttainable", message) {}
};

class StepSizeTooLarge : public NumericalError {
 public:
  explicit StepSizeTooLarge(const std::string& message)
      : NumericalError("StepSizeTooLarge", message) {}
};

/// The characteristic polynomial of a drift matrix has a non-negligible
/// imaginary part, which means the matrix lost its conjugate-pair structure.
class ComplexCharPoly : public NumericalError {
 public:
  explicit ComplexCharPoly(const std::string& message)
      : NumericalError("ComplexCharPoly", message) {}
};

class SingularMatrix : public NumericalError {
 public:
  explicit SingularMatrix(const std::string& message)
      : NumericalError("SingularMatrix", message) {}
};

class NotConverged : public NumericalError {
 public:
  explicit NotConverged(const std::string& message)
      : NumericalError("NotConverged", message) {}
};

class UnstableSystem : public NumericalError {
 public:
  explicit UnstableSystem(const std::string& message)
      : NumericalError("UnstableSystem", message) {}
};

}  // namespace optorouter
