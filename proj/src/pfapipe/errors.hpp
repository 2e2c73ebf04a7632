#pragma once

#include <stdexcept>
#include <string>

namespace pfapipe {

// Violated precondition or type invariant on a public operation.
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Filesystem-level failure (missing file, unwritable path, short read).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// File exists but its contents do not match the declared format.
class FormatError : public std::runtime_error {
public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Input is structurally valid but numerically unusable (e.g. all-zero images
// handed to percentile-based gain estimation).
class DegenerateInputError : public std::runtime_error {
public:
  explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfapipe
