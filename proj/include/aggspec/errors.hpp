#pragma once

#include <stdexcept>
#include <string>

namespace aggspec {

// Runtime numerical failures (singular resolvent blocks, resource caps).
// Input and configuration problems use std::invalid_argument instead.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace aggspec
