#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dualpoly/numerics.hpp"

namespace dualpoly {

/// Caller handed in arguments outside an operation's contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would need more work than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, BigInt required, std::uint64_t budget)
      : std::runtime_error(what + ": needs " + short_count(required) + ", budget " +
                           std::to_string(budget)),
        required_(std::move(required)),
        budget_(budget) {}

  const BigInt& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string short_count(const BigInt& v) {
    std::string digits = v.get_str();
    if (digits.size() <= 24) return digits;
    return "about 10^" + std::to_string(digits.size() - 1);
  }

  BigInt required_;
  std::uint64_t budget_;
};

/// A construction produced an object that fails its own exact post-check.
class DegenerateConstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

}  // namespace dualpoly
