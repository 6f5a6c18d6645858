#pragma once

// The quivers Gamma_{n,Sigma} (edges i -> j for i < j, one per letter) and
// their looped versions, paths, ambles, the polynomials f_pi^w, the quiver
// algebra over polynomial functions, and the representation rho.

#include <map>
#include <string>
#include <vector>

#include "utvar/poly.hpp"

namespace utvar {

struct Path {
  std::vector<int> vertices;  // nondecreasing; strictly increasing when loop-free
  std::string labels;         // |labels| == |vertices| - 1

  static Path empty(int v) { return {{v}, {}}; }

  int source() const { return vertices.front(); }
  int target() const { return vertices.back(); }
  std::size_t length() const { return labels.size(); }
  bool loop_free() const;

  /// Concatenation; requires target() == other.source().
  Path operator*(const Path& other) const;

  // by length, then vertex sequence, then labels
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);
  friend bool operator==(const Path&, const Path&) = default;
};

/// "<1 -a-> 2 -b-> 3>", or "<2>" for an empty path.
std::string to_string(const Path& p);

/// Loop-free paths of length <= max_len (negative: unbounded) in Gamma_{n,Sigma},
/// in Path order.
std::vector<Path> enum_paths(int n, const std::string& sigma, int max_len = -1);

/// Paths in the looped quiver labelled w whose loop removal is pi.
std::vector<Path> enum_ambles(const Path& pi, const Word& w);

/// Product of sigma_v over the loops (v -sigma-> v) of an amble.
Monomial amble_monomial(const Path& amble);

/// Sum of amble monomials, by dynamic programming over (position in w,
/// position in pi).
CountPoly f_pi_w(const Path& pi, const Word& w);

/// Number of occurrences of u as a scattered subword of w.
std::uint64_t scattered_count(const Word& u, const Word& w);

/// Finitely supported map from loop-free paths to polynomials over S.
class QAElem {
 public:
  QAElem(int n, SemiringHandle s) : n_(n), s_(std::move(s)) {}

  /// Sum of the empty paths.
  static QAElem identity(int n, SemiringHandle s);

  int n() const { return n_; }
  const SemiringHandle& semiring() const { return s_; }
  const std::map<Path, FormalPoly>& terms() const { return terms_; }
  /// Coefficient of p (zero polynomial when absent).
  FormalPoly coeff(const Path& p) const;

  void add_term(const Path& p, const FormalPoly& c);

  QAElem operator+(const QAElem& other) const;
  /// Convolution over path concatenation.
  QAElem operator*(const QAElem& other) const;

  /// Formal equality of every coefficient.
  friend bool operator==(const QAElem& a, const QAElem& b);

 private:
  void require_same(const QAElem& other) const;

  int n_;
  SemiringHandle s_;
  std::map<Path, FormalPoly> terms_;
};

/// Coefficients f_pi^w as counts, for every loop-free path over the letters
/// of w (paths with other letters have no ambles).
std::map<Path, CountPoly> rho_counts(const Word& w, int n);

QAElem rho(const Word& w, int n, SemiringHandle s);

/// delta (sigma_n := 1) applied to every coefficient.
QAElem lambda_reduce(const QAElem& p);

/// Inverse of lambda on the image of rho, n >= 2: letter counts are read from
/// the <1> coefficient and the missing sigma_n exponents reinserted. Throws
/// NotInImage when the degree bookkeeping is inconsistent.
QAElem lambda_reconstruct(const QAElem& q);

/// "coeff <path> + ..." in Path order; multi-term coefficients parenthesized.
std::string to_string(const QAElem& p);

/// [{"path": {"vertices": [...], "labels": "..."}, "coeff": "..."}, ...]
std::string to_json(const QAElem& p);

}  // namespace utvar
