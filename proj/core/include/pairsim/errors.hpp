#pragma once

#include <stdexcept>

namespace pairsim {

/// Resource guard tripped (register size, oracle dimension, ...).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative procedure exhausted its budget without converging.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A projection target carries no amplitude in the input state.
struct EmptySectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pairsim
