#pragma once

// Commutative semirings with 0 and 1, and the concrete instances the library
// is generic over. Elements are a tagged value; a handle to an immutable
// Semiring interprets them.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "utvar/rational.hpp"

namespace utvar {

struct TropicalVal {
  ExtRational x;
  friend bool operator==(const TropicalVal&, const TropicalVal&) = default;
};

struct IntervalVal {
  ExtRational x;  // -inf or a rational in [0, 1]
  friend bool operator==(const IntervalVal&, const IntervalVal&) = default;
};

struct BoolVal {
  bool b = false;
  friend bool operator==(const BoolVal&, const BoolVal&) = default;
};

struct NatVal {
  Natural n;
  friend bool operator==(const NatVal& a, const NatVal& b) { return a.n == b.n; }
};

struct TableVal {
  std::uint32_t index = 0;
  friend bool operator==(const TableVal&, const TableVal&) = default;
};

/// Element of the free commutative idempotent semiring B[X]: a set of
/// exponent vectors over the generating symbols.
struct FreeIdptVal {
  std::set<std::vector<std::uint32_t>> monomials;
  friend bool operator==(const FreeIdptVal&, const FreeIdptVal&) = default;
};

using Elem = std::variant<TropicalVal, BoolVal, NatVal, TableVal, IntervalVal, FreeIdptVal>;

/// How polynomial-function equality is decided over a semiring.
enum class EqStrategy {
  Formal,              // distinct formal polynomials are distinct functions
  Exhaustive,          // finite carrier, compare value tables
  TropicalDominance,   // max-plus, convex-hull dominance of terms
  BooleanSupport,      // minimal monomial supports
  IntervalDominance,   // truncated max-plus on [0,1], box-restricted dominance
};

std::string_view to_string(EqStrategy s);

class Semiring;
using SemiringHandle = std::shared_ptr<const Semiring>;

class Semiring {
 public:
  virtual ~Semiring() = default;

  /// Selector string this instance was built from, e.g. "zmod:3".
  virtual const std::string& name() const = 0;
  virtual EqStrategy eq_strategy() const = 0;
  virtual bool idempotent() const = 0;

  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual bool contains(const Elem& a) const = 0;

  /// Throws CarrierMismatch when an operand is outside the carrier.
  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;

  /// Image of k as the k-fold sum of one.
  virtual Elem nat(std::uint64_t k) const;

  bool is_zero(const Elem& a) const { return a == zero(); }
  bool is_one(const Elem& a) const { return a == one(); }

  virtual std::string format(const Elem& a) const = 0;
  virtual Elem parse(std::string_view text) const = 0;

  /// Full carrier, listed in index order, for finite semirings only.
  virtual std::optional<std::vector<Elem>> elements() const { return std::nullopt; }

  /// Random carrier element for randomized testing and sampling oracles;
  /// includes the zero and one specials with positive probability.
  virtual Elem sample(std::mt19937_64& rng) const = 0;

 protected:
  virtual Elem add_unchecked(const Elem& a, const Elem& b) const = 0;
  virtual Elem mul_unchecked(const Elem& a, const Elem& b) const = 0;
};

bool same_semiring(const SemiringHandle& a, const SemiringHandle& b);

/// Builds a semiring from a selector: "tropical", "boolean", "nat",
/// "zmod:<p>", "interval", "freeidpt:<k>" or "table:<path>".
SemiringHandle make_semiring(std::string_view selector);

SemiringHandle tropical();
SemiringHandle boolean();
SemiringHandle naturals();
SemiringHandle interval();
SemiringHandle zmod(std::uint32_t modulus);
SemiringHandle free_idempotent(std::uint32_t symbols);

/// Finite semiring given by explicit operation tables. The laws are checked
/// exhaustively on construction.
struct TableSpec {
  std::vector<std::string> elements;
  std::uint32_t zero = 0;
  std::uint32_t one = 1;
  std::vector<std::vector<std::uint32_t>> add;
  std::vector<std::vector<std::uint32_t>> mul;
};

SemiringHandle make_table_semiring(std::string name, TableSpec spec);

/// Loads {"elements", "zero", "one", "add", "mul"}; matrix entries may be
/// element names or indices.
SemiringHandle load_table_semiring(const std::filesystem::path& path);
SemiringHandle parse_table_semiring(std::string name, std::string_view json_text);

/// Index-level operation tables for a finite semiring, used by the
/// exhaustive evaluators.
struct FiniteTables {
  std::uint32_t size = 0;
  std::uint32_t zero = 0;
  std::uint32_t one = 0;
  std::vector<std::uint8_t> add;  // size * size, row-major
  std::vector<std::uint8_t> mul;
  std::vector<Elem> elements;

  std::uint8_t plus(std::uint32_t a, std::uint32_t b) const { return add[a * size + b]; }
  std::uint8_t times(std::uint32_t a, std::uint32_t b) const { return mul[a * size + b]; }
  std::uint32_t index_of(const Elem& e) const;
};

/// Tables for finite carriers of at most 256 elements; nullopt otherwise.
std::optional<FiniteTables> finite_tables(const Semiring& s);

/// Least (i, j), i < j, with a^i = a^j for every element; finite carriers only.
std::optional<std::pair<std::uint32_t, std::uint32_t>> multiplicative_torsion(const Semiring& s);

}  // namespace utvar
