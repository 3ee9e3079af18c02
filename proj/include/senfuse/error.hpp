/* Copyright 2026 The Senfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SENFUSE_ERROR_HPP_
#define SENFUSE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace senfuse {

// Base class for all library failures. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor rank/dimension disagreement.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Input values outside an operation's domain (non-binary labels, bad rates...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// NaN/Inf surfaced by a numeric kernel or a diverging training run.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// File system and serialization failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// A referenced clip is missing from the local store. Counted, not fatal.
class UnavailableSegment : public IoError {
 public:
  explicit UnavailableSegment(const std::string& msg) : IoError(msg) {}
};

}  // namespace senfuse

#endif  // SENFUSE_ERROR_HPP_
