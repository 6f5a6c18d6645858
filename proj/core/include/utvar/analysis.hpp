#pragma once

// Local finiteness, free-object enumeration, the bicyclic monoid and its
// tropical embedding, and the prefix-abelianization representation.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "utvar/variety.hpp"

namespace utvar {

// ---------------------------------------------------------------- torsion

struct TorsionFalsifier {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::optional<Elem> point;  // x with x^i != x^j, when the strategy gave one
};

struct TorsionWitness {
  bool found = false;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t bound = 0;
  std::vector<TorsionFalsifier> falsifiers;  // every pair checked before stopping
};

/// Least (i, j), 1 <= i < j <= bound, lexicographically, with x^i = x^j as
/// functions in one variable over S.
TorsionWitness torsion_search(const SemiringHandle& s, std::uint32_t bound = 12);

enum class Finiteness { LocallyFinite, NotLocallyFinite, Unknown };

std::string_view to_string(Finiteness f);

struct FinitenessReport {
  std::string semiring;
  int n = 1;
  Finiteness verdict = Finiteness::Unknown;
  TorsionWitness torsion;
  /// Which condition was certified: "(i)" the generated variety is locally
  /// finite, "(ii)" S satisfies a multiplicative identity beyond
  /// commutativity, "(iii)" S satisfies x^i = x^j for some i < j; prefixed
  /// with "not " for a refutation.
  std::string certified;
  /// Description of an element family with x^i != x^j for all i < j.
  std::string falsifier_family;
  /// Number of pairwise distinct free elements among a^0..a^bound (rank 1).
  std::optional<std::size_t> distinct_powers;

  std::string summary() const;
  std::string to_json() const;
};

/// Torsion found (or a finite carrier's exact torsion): locally finite.
/// No torsion up to the bound and a known non-torsion element family:
/// not locally finite. Otherwise unknown.
FinitenessReport local_finiteness_report(const SemiringHandle& s, int n, std::uint32_t bound = 12);

// ---------------------------------------------------------------- free objects

struct CayleyTable {
  std::string alphabet;
  bool monoid = true;
  std::vector<std::string> words;    // BFS-first representative word
  std::vector<std::string> keys;     // canonical keys
  std::vector<std::string> display;  // canonical representative, printed
  std::vector<std::vector<std::uint32_t>> table;  // element x generator -> element

  std::size_t size() const { return keys.size(); }
  std::string to_csv() const;
  std::string to_json() const;
};

/// Closure of the generators (and the identity in monoid mode) under right
/// multiplication by generators, deduplicated by canonical key. Throws
/// LimitExceeded past `limit` elements.
CayleyTable enumerate_free(int n, const SemiringHandle& s, int rank, std::size_t limit,
                           bool monoid = true);

/// Size of the multiplicative closure of a finite set of quiver-algebra
/// elements; LimitExceeded past `limit`. Requires canonical forms.
std::size_t qa_closure(const std::vector<QAElem>& generators, std::size_t limit);

// ---------------------------------------------------------------- identities in S

/// Whether u = v holds in the multiplicative monoid of S.
bool multiplicative_identity_holds(const Identity& id, const SemiringHandle& s);

/// A torsion pair (i, j) obtained by substituting powers of one variable
/// into an identity with unbalanced letter counts; nullopt when balanced or
/// when every substitution degenerates to x^0.
std::optional<std::pair<std::uint32_t, std::uint32_t>> torsion_from_identity(const Identity& id);

// ---------------------------------------------------------------- bicyclic

/// q^i p^j in the bicyclic monoid <p, q | pq = 1>.
struct BicyclicElem {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  friend bool operator==(const BicyclicElem&, const BicyclicElem&) = default;
};

BicyclicElem bicyclic_mul(const BicyclicElem& x, const BicyclicElem& y);

/// [[i-j, i+j], [-inf, j-i]] over the tropical semiring.
UTMatrix bicyclic_embed(const BicyclicElem& x);

struct EmbeddingCheck {
  bool morphism = true;
  bool injective = true;
  std::uint64_t products_checked = 0;
  std::string failure;
  bool ok() const { return morphism && injective; }
};

/// Morphism law for all i, j, k, l <= bound; injectivity on i, j <= bound.
EmbeddingCheck verify_embedding(std::uint64_t bound);

// ---------------------------------------------------------------- prefix abelianization

/// (set of abelianized nonempty prefixes, abelianization); letters as
/// variables at vertex 1.
struct HElem {
  std::set<Monomial> prefixes;
  Monomial content;
  friend bool operator==(const HElem&, const HElem&) = default;
};

/// Throws Error for the empty word.
HElem prefix_abelianization_embed(const Word& w);

/// (P, m)(Q, n) = (P u mQ, mn).
HElem h_mul(const HElem& x, const HElem& y);

std::string to_string(const HElem& h);

}  // namespace utvar
