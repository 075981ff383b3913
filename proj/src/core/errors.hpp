#pragma once

#include <stdexcept>
#include <string>

namespace wigmd {

enum class Errc {
  invalid_argument,
  grid_mismatch,
  unresolved_degree,
  not_normalized,
  not_orthonormal,
  singular_matrix,
  kernel_not_real,
  parse_error,
  io_error,
  out_of_range,
  zero_signal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace wigmd
