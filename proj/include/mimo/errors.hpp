/*
 * Copyright 2026 The mimo-detect Authors
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

namespace mimo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class NonFiniteError : public Error {
public:
  using Error::Error;
};

/// A pivot fell below the relative singularity threshold. Also raised as the
/// rank-deficient error by pseudo_inverse and the detectors.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
public:
  using Error::Error;
};

/// Exhaustive ML search would exceed the configured candidate budget.
class GuardExceededError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration. key() names the offending setting.
class ConfigError : public Error {
public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

} // namespace mimo
