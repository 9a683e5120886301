#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xforge {

// Parameter combination for which no construction exists (CLI exit code 3).
class InfeasibleParameters : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// An exact enumeration would exceed its explicit budget (CLI exit code 4).
class BudgetExceeded : public std::runtime_error {
 public:
    BudgetExceeded(const std::string& what, std::size_t requested, std::size_t budget)
        : std::runtime_error(what + " (requested " + std::to_string(requested) + ", budget " +
                             std::to_string(budget) + ")"),
          requested_(requested),
          budget_(budget) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t budget() const noexcept { return budget_; }

 private:
    std::size_t requested_;
    std::size_t budget_;
};

}  // namespace xforge
