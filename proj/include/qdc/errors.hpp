#pragma once

#include <stdexcept>
#include <string>

namespace qdc {

// A caller-supplied argument violates an operation's precondition
// (non-coprime h and k, p dividing a, m+1 not a multiple of p-1, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A closed form was evaluated at one of its poles (1 + q^e = 0, q = 1, ...).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// p-adic precision ran out before the requested number of digits was reached.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed the desk-scale work cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace qdc
