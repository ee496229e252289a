// Copyright 2026 The hominv Authors
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

namespace hominv {

/// Input violates a documented invariant (non-Hermitian state, bad shape...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter is outside its allowed interval.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A diagram is malformed (overlapping edges, bad copy index).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The dense path was asked for more copies than it can hold.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An identity needs a diagram value that was not supplied.
class UnresolvedTermError : public std::runtime_error {
 public:
  explicit UnresolvedTermError(std::string label)
      : std::runtime_error("unresolved term: " + label), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class InsufficientStatisticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invariant triple does not correspond to a real non-negative spectrum.
class UnphysicalTripleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hominv
