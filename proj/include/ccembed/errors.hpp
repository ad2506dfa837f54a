#pragma once

#include <stdexcept>

namespace ccembed {

// Invalid parameters, flags, or config-file contents. CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that violates an operation's requirements (unparseable edge
// list, disconnected graph where connectivity is required, ...). Exit code 3.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation broke down numerically (non-finite iterates, infeasible
// constrained QP, failed factorization). Exit code 4.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccembed
