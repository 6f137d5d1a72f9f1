#pragma once

#include <stdexcept>
#include <string>

namespace oblab {

enum class status : int {
  ok = 0,
  config_error = 1,
  no_convergence = 2,
  hypothesis_violation = 3,
  out_of_domain = 4,
  bad_radius = 5,
  inadmissible_data = 6,
  io_error = 7,
  internal_error = 8,
};

class error : public std::runtime_error {
 public:
  error(status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  status code() const noexcept { return code_; }

 private:
  status code_;
};

[[noreturn]] inline void fail(status code, const std::string& what) { throw error(code, what); }

}  // namespace oblab
