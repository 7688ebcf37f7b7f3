// Copyright 2026 The CSPRQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CSPRQ_ERROR_HPP_
#define CSPRQ_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csprq {

// Malformed input geometry (too few vertices, repeated vertices, NaN, ...).
class InvalidGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Clipping produced a ring that collapses below three non-collinear
// vertices after snapping, or a hole that belongs to no outer ring. The
// input needs perturbation.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No subdivision of a subtraction result contains the recorded location.
class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroAreaRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling accepted no point of the uncertainty region.
class SampleStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A location lies strictly inside a restricted area.
class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingPrecomputation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Geometry failure while processing one moving object; carries its id.
class ObjectError : public std::runtime_error {
 public:
  ObjectError(std::uint64_t object_id, const std::string& what)
      : std::runtime_error("object " + std::to_string(object_id) + ": " + what),
        object_id_(object_id) {}
  std::uint64_t object_id() const { return object_id_; }

 private:
  std::uint64_t object_id_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Generator could not place an entity within its retry budget.
class PlacementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csprq

#endif  // CSPRQ_ERROR_HPP_
