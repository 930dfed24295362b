#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group order (or a product order) exceeds the configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A subgroup argument is not contained where the operation requires it.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

/// Enumeration stopped because the subgroup budget ran out.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t found, std::size_t classes)
      : Error(what), subgroups_found(found), classes_found(classes) {}
  std::size_t subgroups_found;
  std::size_t classes_found;
};

inline constexpr std::size_t kDefaultOrderBound = 2000;

}  // namespace roq
