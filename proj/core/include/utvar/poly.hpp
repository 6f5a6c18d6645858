#pragma once

// Sparse multivariate polynomials in the variables sigma_v (a letter of the
// alphabet attached to a quiver vertex). FormalPoly carries coefficients in a
// semiring; CountPoly carries natural-number multiplicities and is mapped into
// a semiring late, through Semiring::nat.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "utvar/semiring.hpp"

namespace utvar {

using Word = std::string;

struct Var {
  char letter = 'a';
  int vertex = 1;

  // vertex-major, then letter
  friend auto operator<=>(const Var& a, const Var& b) {
    if (auto c = a.vertex <=> b.vertex; c != 0) return c;
    return a.letter <=> b.letter;
  }
  friend bool operator==(const Var&, const Var&) = default;
};

std::string to_string(const Var& v);

/// Product of variables with positive exponents, kept sorted by Var.
class Monomial {
 public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  /// Zero exponents are dropped, repeated variables merged.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(Var v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(const Var& v) const;
  std::uint32_t degree() const;
  /// Total exponent of variables carrying this letter, across vertices.
  std::uint32_t letter_degree(char letter) const;

  Monomial operator*(const Monomial& other) const;
  /// Drops every variable at the given vertex.
  Monomial without_vertex(int vertex) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Printing order: higher total degree first, then ascending Monomial order.
struct PrintOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a < b;
  }
};

/// "a_1^2*b_3", or "1" for the empty monomial.
std::string to_string(const Monomial& m);

/// sigma_vertex^(count of sigma in w) over all letters of w.
Monomial abelianize(std::string_view w, int vertex);

/// Polynomial with natural-number coefficients; no zero counts stored.
class CountPoly {
 public:
  CountPoly() = default;
  static CountPoly monomial(Monomial m, std::uint64_t count = 1);

  const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t total_count() const;

  void add_term(const Monomial& m, std::uint64_t count);
  CountPoly& operator+=(const CountPoly& other);
  CountPoly operator+(const CountPoly& other) const;
  CountPoly operator*(const CountPoly& other) const;
  /// Multiplies every monomial by m.
  CountPoly times(const Monomial& m) const;

  friend bool operator==(const CountPoly&, const CountPoly&) = default;

 private:
  std::map<Monomial, std::uint64_t> terms_;
};

std::string to_string(const CountPoly& p);

/// Point in S^X: one element per variable.
using Assignment = std::map<Var, Elem>;

class FormalPoly {
 public:
  explicit FormalPoly(SemiringHandle s) : s_(std::move(s)) {}

  static FormalPoly zero(SemiringHandle s) { return FormalPoly(std::move(s)); }
  static FormalPoly constant(SemiringHandle s, const Elem& c);
  static FormalPoly monomial(SemiringHandle s, Monomial m);
  static FormalPoly monomial(SemiringHandle s, Monomial m, const Elem& c);
  /// Counts mapped into s through nat; terms whose image is zero vanish.
  static FormalPoly from_counts(SemiringHandle s, const CountPoly& p);

  const SemiringHandle& semiring() const { return s_; }
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::vector<Var> variables() const;

  /// Adds c * m, merging with an existing term in the semiring.
  void add_term(const Monomial& m, const Elem& c);

  FormalPoly operator+(const FormalPoly& other) const;
  FormalPoly operator*(const FormalPoly& other) const;
  FormalPoly& operator+=(const FormalPoly& other);

  /// Formal equality (same semiring, same terms).
  friend bool operator==(const FormalPoly& a, const FormalPoly& b);

 private:
  void require_same(const FormalPoly& other) const;

  SemiringHandle s_;
  std::map<Monomial, Elem> terms_;
};

/// Value of the induced function. Throws Error if a variable is unassigned.
Elem evaluate(const FormalPoly& p, const Assignment& point);

/// Partial evaluation setting every variable at vertex n to one.
FormalPoly delta(const FormalPoly& p, int n);

/// Terms joined by " + "; coefficient other than one prefixed as "c*".
std::string to_string(const FormalPoly& p);

}  // namespace utvar
