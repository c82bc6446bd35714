#pragma once

#include <stdexcept>
#include <string>

namespace spinor_forge {

// Numeric values are part of the C ABI (see spinor_forge.h).
enum class ErrorCode : int {
  invalid_argument = 1,
  parse_error = 2,
  zero_current = 3,
  unknown_pattern = 4,
  sampler_exhausted = 5,
  not_a_symmetry = 6,
  singular_matrix = 7,
  precondition = 8,
  both_blocks_zero = 9,
  zero_spinor = 10,
  linearly_dependent = 11,
  off_shell = 12,
  massive_input = 13,
  step_too_large = 14,
  consistency = 15,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinor_forge
