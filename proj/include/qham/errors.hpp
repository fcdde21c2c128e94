// Copyright 2026 The QHAM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qham {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested register or matrix is larger than the configured limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument or on a circuit was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The weight matrix is all zero, so no normalization factor exists.
class DegenerateWeightsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Measure/Reset handed to a routine that only accepts unitaries.
class UnsupportedOperationError : public ContractError {
 public:
  using ContractError::ContractError;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A device lacks a parameter needed for the requested channel.
class NoiseModelError : public Error {
 public:
  using Error::Error;
};

class RoutingError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration; the message carries the JSON path of the field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : Error("config error at " + (path.empty() ? std::string("/") : path) +
              ": " + what),
        path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qham
