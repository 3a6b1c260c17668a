// SPDX-License-Identifier: MIT
//
// Shared error types used across the library. Preconditions on public
// entry points throw precondition_error; failed internal self-audits of
// computed constants throw audit_error.
#pragma once

#include <stdexcept>
#include <string>

namespace menukit {

struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct audit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw precondition_error(what);
}

}  // namespace menukit
