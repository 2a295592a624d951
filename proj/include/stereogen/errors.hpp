#pragma once

#include <stdexcept>
#include <string>

namespace stereogen {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV/JSON/config); message names file and line.
struct ParseError : Error {
  using Error::Error;
};

/// Frequency filter removed every label of a feature.
struct NoLabelsError : Error {
  using Error::Error;
};

/// Too few observations for a covariance estimate.
struct InsufficientDataError : Error {
  using Error::Error;
};

/// Too few labels to cluster.
struct InsufficientLabelsError : Error {
  using Error::Error;
};

/// Invalid configuration value.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace stereogen
