#pragma once

#include <stdexcept>
#include <string>

namespace su2chan {

enum class Errc {
  DivisionByZero,
  NonTerminating,
  IndexOutOfRange,
  LengthMismatch,
  LevelMismatch,
  NotUnitaryInput,
  InvalidSpec,
  BandLimitExceeded,
  SingularComponent,
  NonFiniteSample,
  SpectrumOutOfRange,
};

const char* errc_name(Errc code) noexcept;

// Every precondition violation in the library surfaces as one of these.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace su2chan
