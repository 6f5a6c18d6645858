#pragma once

// Equality of polynomial functions over a semiring. Two formal polynomials
// are equal as functions when their evaluation maps agree on all of S^X; the
// decision procedure is chosen by the semiring's EqStrategy.

#include <optional>
#include <string>
#include <vector>

#include "utvar/poly.hpp"

namespace utvar {

struct EqResult {
  bool equal = true;
  /// Point where the two functions differ, when the strategy produced one.
  std::optional<Assignment> witness;
};

/// Decides f == g as functions. Throws UnsupportedStrategy / LimitExceeded.
EqResult func_equal(const FormalPoly& f, const FormalPoly& g);

/// Variables of f and g, sorted.
std::vector<Var> joint_variables(const FormalPoly& f, const FormalPoly& g);

/// Dominance of one weighted exponent vector by a family: find lambda >= 0
/// with sum(lambda) = 1, sum(lambda_j b_j) = a and sum(lambda_j d_j) >= c.
struct FeasibilitySystem {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> generators;  // b_j
  std::vector<Rational> levels;                   // d_j
  std::vector<Rational> target;                   // a
  Rational target_level;                          // c
};

struct FeasibilityCertificate {
  bool feasible = false;
  /// Convex weights, when feasible.
  std::vector<Rational> weights;
  /// When infeasible: offset + direction.b_j + level_weight*d_j <= 0 for all j,
  /// offset + direction.a + level_weight*c = 1, level_weight >= 0.
  Rational offset;
  std::vector<Rational> direction;
  Rational level_weight;

  /// A point x with c + a.x > max_j(d_j + b_j.x); infeasible systems only.
  std::vector<Rational> separating_point(const FeasibilitySystem& sys) const;
};

FeasibilityCertificate feasible(const FeasibilitySystem& sys);

/// Whether coeff + m.x <= g(x) for every real x (max-plus reading).
bool tropical_dominated(const Monomial& m, const Rational& coeff, const FormalPoly& g);

/// Function-equal representative in normal form. Boolean: exponents clipped
/// to one, superset supports removed. Tropical: dominated terms removed.
/// Finite tables: exponents reduced by the multiplicative torsion. Formal:
/// identity. Interval: UnsupportedStrategy.
FormalPoly canonicalize(const FormalPoly& f);

bool supports_canonical_form(const Semiring& s);

/// Canonical representative plus, for finite tables, the full value table
/// over S^universe in mixed-radix order (first universe variable slowest).
struct CanonicalForm {
  FormalPoly rep;
  std::vector<std::uint8_t> table;
  bool tabulated = false;

  bool is_zero_function() const;
  std::string key() const;
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.tabulated ? a.table == b.table : a.rep == b.rep;
  }
};

/// The universe must contain every variable of f.
CanonicalForm canonical_form(const FormalPoly& f, const std::vector<Var>& universe);

/// Maximum number of points the exhaustive strategy evaluates.
inline constexpr std::uint64_t kExhaustiveCap = 10'000'000;

/// Values of f at every point of S^universe (finite carriers).
std::vector<std::uint8_t> value_table(const FormalPoly& f, const std::vector<Var>& universe,
                                      const FiniteTables& tables);

}  // namespace utvar
