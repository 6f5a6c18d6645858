#pragma once

// Identities in UT_n(S): the path-wise checker, the matrix-substitution
// oracle, and elements of the free objects of the generated varieties.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "utvar/funceq.hpp"
#include "utvar/quiver.hpp"

namespace utvar {

/// Upper triangular n x n matrix over S; entries stored row-major, 1-based
/// accessors. Entries below the diagonal are zero by construction.
class UTMatrix {
 public:
  UTMatrix(int n, SemiringHandle s);
  static UTMatrix identity(int n, SemiringHandle s);

  int n() const { return n_; }
  const SemiringHandle& semiring() const { return s_; }
  const Elem& at(int i, int j) const { return entries_[index(i, j)]; }
  /// Throws Error when i > j and e is not zero.
  void set(int i, int j, Elem e);

  friend bool operator==(const UTMatrix& a, const UTMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t index(int i, int j) const;

  int n_;
  SemiringHandle s_;
  std::vector<Elem> entries_;
};

UTMatrix ut_mul(const UTMatrix& x, const UTMatrix& y);

using MatrixAssignment = std::map<char, UTMatrix>;

/// Product of the matrices assigned to the letters of w; the identity for
/// the empty word.
UTMatrix ut_eval(const Word& w, const MatrixAssignment& assign, int n, const SemiringHandle& s);

/// "[[0, 1], [-inf, 2]]"
std::string to_string(const UTMatrix& m);

struct Identity {
  Word lhs;
  Word rhs;

  /// "u = v"; an empty side (or "1") makes a monoid identity.
  static Identity parse(std::string_view text);
  bool monoid() const { return lhs.empty() || rhs.empty(); }
  /// Sorted distinct letters of both sides.
  std::string letters() const;
};

std::string to_string(const Identity& id);

/// xyyxxyxyyx = xyyxyxxyyx
Identity adjan_identity();

struct Verdict {
  bool holds = true;
  std::optional<Path> witness_path;
  std::optional<Assignment> witness_point;
  std::optional<MatrixAssignment> witness_assignment;
  std::optional<std::uint64_t> seed;
  std::uint64_t substitutions_checked = 0;
  bool exhaustive = false;
  /// Sampling stopped at the budget without a counterexample.
  bool budget_exhausted = false;
};

/// Decides u = v in UT_n(S): holds iff f_pi^u and f_pi^v are equal functions
/// for every loop-free path pi. On failure the first failing path is
/// reported, with a matrix substitution separating the two sides whenever
/// funceq produced a separating point.
Verdict check_identity(const Identity& id, int n, const SemiringHandle& s);

/// Matrices realizing f_pi^w at `point` in the (source, target) entry of the
/// product: diagonal entries carry sigma_v on the vertices of pi, the edges
/// of pi carry one for their own letter, everything else off-diagonal is zero.
MatrixAssignment lift_point(const Path& pi, const Assignment& point, const std::string& letters,
                            int n, const SemiringHandle& s);

struct OracleOptions {
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 0x5eed;
};

/// Finite S with at most `budget` substitutions: exhaustive, exact.
/// Otherwise `budget` random substitutions; holds then means only that no
/// counterexample was found, and budget_exhausted is set.
Verdict oracle_check(const Identity& id, int n, const SemiringHandle& s, OracleOptions opts = {});

/// Re-evaluates a failing verdict's matrices; true when they separate u, v.
bool verify_witness(const Verdict& v, const Identity& id, int n, const SemiringHandle& s);

std::string verdict_to_json(const Verdict& v, const Identity& id, int n, const SemiringHandle& s);
Verdict verdict_from_json(std::string_view text, const SemiringHandle& s);

/// Element of the free object on an alphabet in the variety generated by
/// UT_n(S): one canonical coefficient per loop-free path.
class FreeElem {
 public:
  int n() const { return rep_.n(); }
  const SemiringHandle& semiring() const { return rep_.semiring(); }
  const std::string& alphabet() const { return alphabet_; }
  /// Representative with canonicalized coefficients where available.
  const QAElem& rep() const { return rep_; }
  bool canonical() const { return !keys_.empty(); }
  /// Canonical key; throws UnsupportedStrategy without canonical forms.
  std::string key() const;

 private:
  friend FreeElem make_free_elem(QAElem rep, std::string alphabet);
  friend bool free_eq(const FreeElem& x, const FreeElem& y);

  FreeElem(QAElem rep, std::string alphabet) : rep_(std::move(rep)), alphabet_(std::move(alphabet)) {}

  QAElem rep_;
  std::string alphabet_;
  std::map<Path, std::string> keys_;  // every path over the alphabet
};

FreeElem make_free_elem(QAElem rep, std::string alphabet);
/// The alphabet defaults to the letters of w.
FreeElem free_elem(const Word& w, int n, const SemiringHandle& s, std::string alphabet = {});
FreeElem free_identity(int n, const SemiringHandle& s, const std::string& alphabet);
FreeElem free_mul(const FreeElem& x, const FreeElem& y);
bool free_eq(const FreeElem& x, const FreeElem& y);

}  // namespace utvar
