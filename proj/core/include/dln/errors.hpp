#pragma once

#include <stdexcept>
#include <string>

namespace dln {

// Bad shapes, bad hyperparameters, malformed files. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Divergence, missing bracket, non-finite values. The CLI maps this to exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dln
