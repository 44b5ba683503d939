#pragma once

// Replay of the worked-example ledger.

#include <string>
#include <vector>

#include "json.hpp"
#include "tamecft/milnor.hpp"

namespace tamecft {

struct Assertion {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct SelfcheckResult {
  std::vector<Assertion> assertions;
  bool pass() const;
  std::size_t failed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Symbol-level assertions run under `conv`; field and series assertions do not depend on it.
SelfcheckResult run_selfcheck(const Convention& conv = {});

}  // namespace tamecft
