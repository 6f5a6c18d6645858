#pragma once

// Exact rational linear programming: dense two-phase simplex with Bland's
// rule. No tolerances; every pivot is exact.

#include <cstddef>
#include <vector>

#include "utvar/rational.hpp"

namespace utvar::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Row {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

struct Problem {
  std::size_t num_vars = 0;
  /// Per variable; empty means every variable is nonnegative.
  std::vector<bool> free_vars;
  std::vector<Row> rows;
  /// Maximized. Empty means pure feasibility.
  std::vector<Rational> objective;

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;  // valid when Optimal
  Rational value;
};

Result maximize(const Problem& problem);

}  // namespace utvar::lp
