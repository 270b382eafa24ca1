// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <stdexcept>
#include <string>

namespace topoforge {

// Base of every exception the library throws on purpose. The CLI maps the
// concrete subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing files, empty corpora, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent data (parse errors, invariant violations).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A line-oriented parse failure. `line` is 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, std::string token, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what +
                        (token.empty() ? std::string() : " ('" + token + "')")),
        line_(line),
        token_(std::move(token)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

// A bounded retry loop ran out of attempts.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// Non-finite values or similar numerical breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace topoforge
