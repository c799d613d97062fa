#pragma once

#include <stdexcept>

namespace drivesim {

// Invalid configuration or parameter set. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation state stopped being finite. The CLI maps this to exit code 2.
// The message carries the simulation time at which the blow-up was detected.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace drivesim
