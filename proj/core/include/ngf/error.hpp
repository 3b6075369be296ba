#pragma once

#include <stdexcept>
#include <string>

namespace ngf {

enum class Errc {
  invalid_argument,
  duplicate,
  unknown_type,
  schema_violation,
  no_admissible_metric,
  not_found,
  dangling_endpoint,
  kind_mismatch,
  shape_mismatch,
  precondition,
  io,
  format,
  checksum,
  version,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // I/O failures are distinguished from data problems by the CLI exit code.
  bool is_io() const noexcept { return code_ == Errc::io; }

 private:
  Errc code_;
};

}  // namespace ngf
