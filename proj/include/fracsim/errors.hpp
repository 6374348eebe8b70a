#pragma once

#include <stdexcept>
#include <string>

namespace fracsim {

// Invalid configuration or argument outside a documented precondition.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A run stopped because the state became unusable (CFL violation,
// positivity loss, non-finite values). Carries the offending step.
struct NumericalAbort : std::runtime_error {
  long step;
  NumericalAbort(long step_, const std::string& what_)
      : std::runtime_error(what_ + " (step " + std::to_string(step_) + ")"),
        step(step_) {}
};

}  // namespace fracsim
