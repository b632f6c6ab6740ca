#pragma once

#include <stdexcept>
#include <string>

namespace lval {

/// Operands of incompatible shape (group tags, ambient dimensions, product arity).
class shape_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation requested on a structure that does not provide it.
class unsupported_operation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Element handed to a lattice that does not own it.
class foreign_element : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed textual or JSON input.
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-supplied object broke its documented contract
/// (non-monotone sequence, oracle answer above its target, bad witness).
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lval
