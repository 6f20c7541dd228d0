#pragma once

#include <stdexcept>
#include <string>

namespace torbase {

/// Input rejected before any computation (bad generators, bad parameters).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (element count, cone count, degree, time) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact arithmetic left the 64-bit range. Treated as a resource limit.
class OverflowError : public ResourceLimitError {
 public:
  using ResourceLimitError::ResourceLimitError;
};

/// Two independent routes to the same quantity disagreed. Always a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const char* what) {
  if (!cond) throw InternalConsistencyError(what);
}
inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InternalConsistencyError(what);
}

}  // namespace torbase
