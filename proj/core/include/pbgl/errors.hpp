#pragma once

#include <stdexcept>

namespace pbgl {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid model, grid, atom or scenario parameters, detected before any
// heavy computation runs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scenario file could not be parsed (syntax, missing keys, wrong types).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Mode placement failed (recurrence left the band, density underflow, ...).
class GridError : public Error {
 public:
  using Error::Error;
};

// A shift integral has a pole inside its integration domain.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Step-size underflow, norm drift beyond the configured bound, or step-count
// exhaustion during propagation.
class IntegratorError : public Error {
 public:
  using Error::Error;
};

class AnalysisError : public Error {
 public:
  using Error::Error;
};

// A correlation was requested between traces where at least one has no
// variance; distinct from a numeric zero correlation.
class ZeroVarianceError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

// No spectral peak rises above the noise floor.
class NoOscillationError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pbgl
