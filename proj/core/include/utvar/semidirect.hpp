#pragma once

// The n = 2 representation in the semidirect product G = B^Sigma x| A, where
// A is the multiplicative monoid of monomial functions over S in the letters
// (sigma_1 identified with sigma) and B is the additive monoid of polynomial
// functions. (f, b)(g, c) = (f + b g, b c).

#include <map>
#include <string>

#include "utvar/quiver.hpp"

namespace utvar {

struct GElem {
  SemiringHandle semiring;
  std::map<char, FormalPoly> b;  // one coordinate per letter of the alphabet
  FormalPoly a;                  // single-term polynomial in vertex-1 variables

  /// (0, 1) over the alphabet.
  static GElem identity(SemiringHandle s, const std::string& alphabet);
  FormalPoly coordinate(char letter) const;
};

GElem g_mul(const GElem& x, const GElem& y);

/// Componentwise function equality (func_equal on every coordinate and on a).
bool equivalent(const GElem& x, const GElem& y);

/// Formal equality of every component.
bool operator==(const GElem& x, const GElem& y);

/// alpha(p) = (sigma -> coefficient of <1 -sigma-> 2>, coefficient of <1>).
/// Requires n = 2, a single-term <1> coefficient, and no vertex-2 variables
/// (input from the image of lambda o rho); throws NotInImage otherwise.
GElem alpha(const QAElem& p, const std::string& alphabet);

/// The preimage of g under alpha within lambda(rho(Sigma*)).
QAElem alpha_recover(const GElem& g);

/// "((a -> a+1, b -> 0), aa)"; letters stand for sigma_1, monomials are
/// spelled as repeated letters. unicode selects "↦" for the arrow.
std::string to_string(const GElem& g, bool unicode = false);

}  // namespace utvar
