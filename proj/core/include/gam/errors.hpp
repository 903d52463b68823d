#pragma once

#include <stdexcept>
#include <string>

namespace gam {

/// A caller-supplied argument violates an operation precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative numerical routine failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}
}  // namespace detail

}  // namespace gam
