#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyrank {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow_u(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed descriptors, polynomial text, instance files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A call's documented precondition does not hold (e.g. `a >= q/D`).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Formal differentiation requested where char(ring) <= degree.
class UnsupportedCharacteristic : public Error {
 public:
  using Error::Error;
};

/// An exact identity failed to hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Raised before any enumeration whose point count exceeds the caller's budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(BigInt cardinality, std::uint64_t budget)
      : Error("budget exceeded: " + cardinality.str() + " points requested, budget " +
              std::to_string(budget)),
        cardinality_(std::move(cardinality)),
        budget_(budget) {}

  const BigInt& cardinality() const noexcept { return cardinality_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  BigInt cardinality_;
  std::uint64_t budget_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace polyrank
