// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 pulsim developers

#pragma once

#include <stdexcept>
#include <string>

namespace pulsim {

/// Malformed input text or document (QASM source, JSON artifacts).
/// Carries a source location when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0, int column = 0)
        : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                      : message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A domain invariant was violated (bad platform field, illegal circuit, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ODE integrator could not complete (step underflow, invariant breach).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pulsim
