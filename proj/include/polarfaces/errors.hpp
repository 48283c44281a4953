#pragma once

#include <stdexcept>
#include <string>

namespace polar {

/// Machine-readable classes of input errors; the CLI reports them verbatim.
enum class ErrorCode {
  malformed_input,
  dimension_mismatch,
  unknown_model,
  unsupported_type,
  invalid_argument,
  not_invariant,
  not_exposed,
};

const char* to_string(ErrorCode code);

class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polar
