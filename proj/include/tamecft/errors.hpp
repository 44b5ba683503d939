#pragma once

#include <stdexcept>
#include <string>

namespace tamecft {

enum class Errc {
  NotAUnit,
  SpecMismatch,
  NotAGenerator,
  TamenessViolated,
  InvalidField,
  AmbiguousZero,
  PrecisionExhausted,
  NotAnNthPower,
  WildRoot,
  CertificateInvalid,
  UnknownPrime,
  NotAUnitAtPrime,
  Parse,
  InvalidConfig,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tamecft
