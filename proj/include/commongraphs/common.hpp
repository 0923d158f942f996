#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace commongraphs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when an enumeration would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  // Elementary search steps allowed per call (backtracking nodes).
  std::uint64_t work_budget = 100'000'000;
  int max_automorphism_vertices = 10;
  int max_expansion_edges = 12;
  int max_generator_vertices = 12;
};

// Counts search steps against a budget; throws once it is exhausted.
class StepCounter {
 public:
  StepCounter(std::uint64_t budget, const char* what) : remaining_(budget), what_(what) {}

  void tick() {
    if (remaining_ == 0) {
      throw BudgetExceeded(std::string(what_) + ": work budget exceeded");
    }
    --remaining_;
  }

  void charge(std::uint64_t steps) {
    if (steps > remaining_) {
      throw BudgetExceeded(std::string(what_) + ": work budget exceeded");
    }
    remaining_ -= steps;
  }

 private:
  std::uint64_t remaining_;
  const char* what_;
};

std::string to_string(const Rational& q);
// Accepts "a/b", integers and finite decimals ("0.25", "-3.5e-2").
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

}  // namespace commongraphs
