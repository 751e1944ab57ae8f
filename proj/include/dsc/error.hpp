#pragma once

#include <stdexcept>
#include <string>

namespace dsc {

// Bad input data or a violated referential-integrity rule. The CLI maps
// this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant. The CLI maps this (and any other unexpected
// exception) to exit code 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dsc
