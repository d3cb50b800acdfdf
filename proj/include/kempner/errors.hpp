#pragma once

#include <stdexcept>

namespace kempner {

/// A request exceeds a configured size limit (moment order, occurrence
/// count, series truncation).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force enumeration would exceed its work budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kempner
