#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

enum class ErrorCode {
  index_out_of_range,
  variance_mismatch,
  degenerate_input,
  not_positive_definite,
  stencil_margin,
  invalid_argument,
  unknown_name,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sasaki
