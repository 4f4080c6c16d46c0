// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weft {

// Logical vertex id: dense, assigned in insertion order, never reused.
using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = 0xffffffffu;

// Edge property slot. Algorithms accumulate in double; storage keeps records
// at 8 bytes so a cache line holds a whole number of them.
using Weight = float;

struct EdgeRecord {
  VertexId dst;
  Weight weight;
};
static_assert(sizeof(EdgeRecord) == 8);

enum class ErrorCode : int {
  kOk = 0,
  kDuplicateExternalId = 1,
  kUnknownVertex = 2,
  kInvalidTaskCount = 3,
  kTaskPanicked = 4,
  kInvalidSubChain = 5,
  kParseError = 6,
  kNegativeWeight = 7,
  kInsufficientMemory = 8,
  kInvalidArgument = 9,
  kIoError = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DuplicateExternalId : Error {
  explicit DuplicateExternalId(const std::string& ext)
      : Error(ErrorCode::kDuplicateExternalId,
              "external id already mapped: " + ext) {}
};

struct UnknownVertex : Error {
  explicit UnknownVertex(VertexId v)
      : Error(ErrorCode::kUnknownVertex,
              "unknown or deleted vertex: " + std::to_string(v)) {}
};

struct InvalidTaskCount : Error {
  explicit InvalidTaskCount(const std::string& what)
      : Error(ErrorCode::kInvalidTaskCount, what) {}
};

struct TaskPanicked : Error {
  TaskPanicked(std::size_t index, const std::string& inner)
      : Error(ErrorCode::kTaskPanicked,
              "task " + std::to_string(index) + " panicked: " + inner),
        index(index) {}
  std::size_t index;
};

struct InvalidSubChain : Error {
  explicit InvalidSubChain(const std::string& what)
      : Error(ErrorCode::kInvalidSubChain, what) {}
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what),
        line(line) {}
  std::size_t line;
};

struct NegativeWeight : Error {
  NegativeWeight(std::size_t line, double w)
      : Error(ErrorCode::kNegativeWeight,
              "line " + std::to_string(line) + ": negative weight " +
                  std::to_string(w)) {}
};

struct InsufficientMemory : Error {
  explicit InsufficientMemory(const std::string& what)
      : Error(ErrorCode::kInsufficientMemory, what) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what)
      : Error(ErrorCode::kIoError, what) {}
};

}  // namespace weft
