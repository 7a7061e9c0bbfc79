// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dpcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/table dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed its enumeration or size budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (graph files, proof files, labelings, input strings).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Honest prover asked to prove a no-instance.
class WitnessError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inapplicable adversary strategy.
class StrategyError : public Error {
 public:
  using Error::Error;
};

/// Verifier misconfiguration: proof shape mismatch, missing neighbor data.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Instance generator could not satisfy its descriptor.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Experiment config parse error; the message carries the line number.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Invalid argument to a library entry point.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpcp
