/*
 * Copyright 2026 The wmp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace wmp {

/// Base class of every error raised by the library. `exit_code()` is the
/// process status the CLI maps the error to.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 3; }
};

/// Malformed wgame / wstrat text. Carries the 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    int exit_code() const noexcept override { return 2; }

private:
    int line_;
    int column_;
};

/// Input is syntactically fine but violates a structural invariant
/// (dead end, unknown state, malformed strategy, lasso not in the game...).
class InvalidInput : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Requested combination has no algorithm here (e.g. k > 1 bounded window).
class Unsupported : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// A configured budget (product cap, oracle budget, enumeration budget) was hit.
class ResourceExceeded : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

/// Precondition of a solver not met (empty winning set for synthesis, ...).
class PreconditionFailed : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 1; }
};

/// Broken internal invariant; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 70; }
};

}  // namespace wmp
