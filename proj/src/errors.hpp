#pragma once

#include <stdexcept>
#include <string>

namespace gb {

// Malformed files, unknown names, violated preconditions. Maps to exit code 2.
class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken runtime contracts: losses outside [0,1], missing observations,
// failed internal cross-checks. Maps to exit code 1.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gb
