#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace frameforge {

// Programming errors: wrong metric index, bad enum, odd panel count.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Caller-supplied data that does not meet an operation's precondition.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed input files or configs.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonNullViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrameDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A guarded denominator fell below its floor. Carries the offending grid indices.
struct DivisionDegenerate : std::runtime_error {
  DivisionDegenerate(const std::string& what, std::vector<std::array<int, 3>> where)
      : std::runtime_error(what), indices(std::move(where)) {}
  std::vector<std::array<int, 3>> indices;
};

}  // namespace frameforge
