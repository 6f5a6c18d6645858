#include "utvar/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "utvar/errors.hpp"

namespace utvar {

// ---------------------------------------------------------------- rationals

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational: " + std::string(text));
  if (q.get_den() == 0) throw ParseError("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Natural& z) { return z.get_str(10); }

std::string ExtRational::to_string() const {
  return finite_ ? utvar::to_string(value_) : std::string("-inf");
}

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "-inf" || text == "-∞") return neg_inf();
  return ExtRational(parse_rational(text));
}

std::string_view to_string(EqStrategy s) {
  switch (s) {
    case EqStrategy::Formal: return "formal";
    case EqStrategy::Exhaustive: return "exhaustive";
    case EqStrategy::TropicalDominance: return "tropical-dominance";
    case EqStrategy::BooleanSupport: return "boolean-support";
    case EqStrategy::IntervalDominance: return "interval-dominance";
  }
  return "unknown";
}

// ---------------------------------------------------------------- base

Elem Semiring::add(const Elem& a, const Elem& b) const {
  if (!contains(a) || !contains(b))
    throw CarrierMismatch("add: operand outside carrier of " + name());
  return add_unchecked(a, b);
}

Elem Semiring::mul(const Elem& a, const Elem& b) const {
  if (!contains(a) || !contains(b))
    throw CarrierMismatch("mul: operand outside carrier of " + name());
  return mul_unchecked(a, b);
}

Elem Semiring::nat(std::uint64_t k) const {
  // double-and-add on the additive monoid generated by one
  Elem result = zero();
  Elem power = one();
  while (k != 0) {
    if (k & 1U) result = add_unchecked(result, power);
    k >>= 1U;
    if (k != 0) power = add_unchecked(power, power);
  }
  return result;
}

bool same_semiring(const SemiringHandle& a, const SemiringHandle& b) {
  return a == b || (a && b && a->name() == b->name());
}

namespace {

template <class T>
const T& as(const Elem& e) {
  return std::get<T>(e);
}

std::string trimmed(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------- tropical

class TropicalSemiring final : public Semiring {
 public:
  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::TropicalDominance; }
  bool idempotent() const override { return true; }
  Elem zero() const override { return TropicalVal{ExtRational::neg_inf()}; }
  Elem one() const override { return TropicalVal{ExtRational(0)}; }
  bool contains(const Elem& a) const override { return std::holds_alternative<TropicalVal>(a); }

  Elem nat(std::uint64_t k) const override { return k == 0 ? zero() : one(); }

  std::string format(const Elem& a) const override { return as<TropicalVal>(a).x.to_string(); }
  Elem parse(std::string_view text) const override {
    return TropicalVal{ExtRational::parse(trimmed(text))};
  }

  Elem sample(std::mt19937_64& rng) const override {
    auto r = uniform(rng, 0, 7);
    if (r == 0) return zero();
    if (r == 1) return one();
    Rational q(uniform(rng, -12, 12), uniform(rng, 1, 4));
    q.canonicalize();
    return TropicalVal{ExtRational(q)};
  }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    const auto& x = as<TropicalVal>(a).x;
    const auto& y = as<TropicalVal>(b).x;
    return TropicalVal{x < y ? y : x};
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    const auto& x = as<TropicalVal>(a).x;
    const auto& y = as<TropicalVal>(b).x;
    if (x.is_neg_inf() || y.is_neg_inf()) return zero();
    return TropicalVal{ExtRational(Rational(x.value() + y.value()))};
  }

 private:
  std::string name_ = "tropical";
};

// ---------------------------------------------------------------- interval

// {-inf} ∪ [0,1] ∩ Q under max and truncated addition min(x + y, 1).
class IntervalSemiring final : public Semiring {
 public:
  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::IntervalDominance; }
  bool idempotent() const override { return true; }
  Elem zero() const override { return IntervalVal{ExtRational::neg_inf()}; }
  Elem one() const override { return IntervalVal{ExtRational(0)}; }
  bool contains(const Elem& a) const override {
    if (!std::holds_alternative<IntervalVal>(a)) return false;
    const auto& x = as<IntervalVal>(a).x;
    return x.is_neg_inf() || (x.value() >= 0 && x.value() <= 1);
  }

  Elem nat(std::uint64_t k) const override { return k == 0 ? zero() : one(); }

  std::string format(const Elem& a) const override { return as<IntervalVal>(a).x.to_string(); }
  Elem parse(std::string_view text) const override {
    Elem e = IntervalVal{ExtRational::parse(trimmed(text))};
    if (!contains(e)) throw ParseError("interval element outside [0,1]: " + std::string(text));
    return e;
  }

  Elem sample(std::mt19937_64& rng) const override {
    auto r = uniform(rng, 0, 7);
    if (r == 0) return zero();
    if (r == 1) return one();
    if (r == 2) return IntervalVal{ExtRational(1)};
    auto den = uniform(rng, 1, 8);
    Rational q(uniform(rng, 0, den), den);
    q.canonicalize();
    return IntervalVal{ExtRational(q)};
  }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    const auto& x = as<IntervalVal>(a).x;
    const auto& y = as<IntervalVal>(b).x;
    return IntervalVal{x < y ? y : x};
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    const auto& x = as<IntervalVal>(a).x;
    const auto& y = as<IntervalVal>(b).x;
    if (x.is_neg_inf() || y.is_neg_inf()) return zero();
    Rational s = x.value() + y.value();
    if (s > 1) s = 1;
    return IntervalVal{ExtRational(s)};
  }

 private:
  std::string name_ = "interval";
};

// ---------------------------------------------------------------- boolean

class BooleanSemiring final : public Semiring {
 public:
  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::BooleanSupport; }
  bool idempotent() const override { return true; }
  Elem zero() const override { return BoolVal{false}; }
  Elem one() const override { return BoolVal{true}; }
  bool contains(const Elem& a) const override { return std::holds_alternative<BoolVal>(a); }
  Elem nat(std::uint64_t k) const override { return BoolVal{k != 0}; }

  std::string format(const Elem& a) const override { return as<BoolVal>(a).b ? "1" : "0"; }
  Elem parse(std::string_view text) const override {
    auto t = trimmed(text);
    if (t == "1" || t == "true") return one();
    if (t == "0" || t == "false") return zero();
    throw ParseError("bad boolean element: " + t);
  }
  std::optional<std::vector<Elem>> elements() const override {
    return std::vector<Elem>{zero(), one()};
  }
  Elem sample(std::mt19937_64& rng) const override { return BoolVal{uniform(rng, 0, 1) == 1}; }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    return BoolVal{as<BoolVal>(a).b || as<BoolVal>(b).b};
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    return BoolVal{as<BoolVal>(a).b && as<BoolVal>(b).b};
  }

 private:
  std::string name_ = "boolean";
};

// ---------------------------------------------------------------- naturals

class NaturalSemiring final : public Semiring {
 public:
  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::Formal; }
  bool idempotent() const override { return false; }
  Elem zero() const override { return NatVal{Natural(0)}; }
  Elem one() const override { return NatVal{Natural(1)}; }
  bool contains(const Elem& a) const override {
    return std::holds_alternative<NatVal>(a) && sgn(as<NatVal>(a).n) >= 0;
  }
  Elem nat(std::uint64_t k) const override {
    Natural z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
    return NatVal{z};
  }

  std::string format(const Elem& a) const override { return to_string(as<NatVal>(a).n); }
  Elem parse(std::string_view text) const override {
    Natural z;
    if (z.set_str(trimmed(text), 10) != 0 || sgn(z) < 0)
      throw ParseError("bad natural: " + std::string(text));
    return NatVal{z};
  }
  Elem sample(std::mt19937_64& rng) const override {
    return NatVal{Natural(static_cast<long>(uniform(rng, 0, 5)))};
  }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    return NatVal{Natural(as<NatVal>(a).n + as<NatVal>(b).n)};
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    return NatVal{Natural(as<NatVal>(a).n * as<NatVal>(b).n)};
  }

 private:
  std::string name_ = "nat";
};

// ---------------------------------------------------------------- free idempotent

class FreeIdempotentSemiring final : public Semiring {
 public:
  explicit FreeIdempotentSemiring(std::uint32_t k) : k_(k), name_("freeidpt:" + std::to_string(k)) {}

  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::Formal; }
  bool idempotent() const override { return true; }
  Elem zero() const override { return FreeIdptVal{}; }
  Elem one() const override {
    return FreeIdptVal{{std::vector<std::uint32_t>(k_, 0)}};
  }
  bool contains(const Elem& a) const override {
    if (!std::holds_alternative<FreeIdptVal>(a)) return false;
    return std::all_of(as<FreeIdptVal>(a).monomials.begin(), as<FreeIdptVal>(a).monomials.end(),
                       [&](const auto& m) { return m.size() == k_; });
  }
  Elem nat(std::uint64_t k) const override { return k == 0 ? zero() : one(); }

  std::string format(const Elem& a) const override {
    const auto& ms = as<FreeIdptVal>(a).monomials;
    if (ms.empty()) return "0";
    std::string out;
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (std::uint32_t i = 0; i < k_; ++i) {
        if ((*it)[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += "x" + std::to_string(i + 1);
        if ((*it)[i] > 1) mono += "^" + std::to_string((*it)[i]);
      }
      out += mono.empty() ? "1" : mono;
    }
    return out;
  }

  Elem parse(std::string_view text) const override {
    FreeIdptVal v;
    auto t = trimmed(text);
    if (t == "0") return v;
    std::stringstream terms(t);
    std::string term;
    while (std::getline(terms, term, '+')) {
      term = trimmed(term);
      std::vector<std::uint32_t> e(k_, 0);
      if (term != "1") {
        std::stringstream factors(term);
        std::string f;
        while (std::getline(factors, f, '*')) {
          f = trimmed(f);
          if (f.size() < 2 || f[0] != 'x') throw ParseError("bad freeidpt factor: " + f);
          auto caret = f.find('^');
          std::uint32_t idx = 0;
          std::uint32_t pw = 1;
          auto idx_str = f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
          if (std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), idx).ec != std::errc{} ||
              idx == 0 || idx > k_)
            throw ParseError("bad freeidpt symbol: " + f);
          if (caret != std::string::npos) {
            auto p = f.substr(caret + 1);
            if (std::from_chars(p.data(), p.data() + p.size(), pw).ec != std::errc{})
              throw ParseError("bad exponent: " + f);
          }
          e[idx - 1] += pw;
        }
      }
      v.monomials.insert(std::move(e));
    }
    return v;
  }

  Elem sample(std::mt19937_64& rng) const override {
    FreeIdptVal v;
    auto count = uniform(rng, 0, 3);
    for (std::int64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> e(k_);
      for (auto& x : e) x = static_cast<std::uint32_t>(uniform(rng, 0, 2));
      v.monomials.insert(std::move(e));
    }
    return v;
  }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    FreeIdptVal v = as<FreeIdptVal>(a);
    v.monomials.insert(as<FreeIdptVal>(b).monomials.begin(), as<FreeIdptVal>(b).monomials.end());
    return v;
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    FreeIdptVal v;
    for (const auto& x : as<FreeIdptVal>(a).monomials) {
      for (const auto& y : as<FreeIdptVal>(b).monomials) {
        std::vector<std::uint32_t> e(k_);
        for (std::uint32_t i = 0; i < k_; ++i) e[i] = x[i] + y[i];
        v.monomials.insert(std::move(e));
      }
    }
    return v;
  }

 private:
  std::uint32_t k_;
  std::string name_;
};

// ---------------------------------------------------------------- tables

class TableSemiring final : public Semiring {
 public:
  TableSemiring(std::string name, TableSpec spec) : name_(std::move(name)), spec_(std::move(spec)) {
    validate();
  }

  const std::string& name() const override { return name_; }
  EqStrategy eq_strategy() const override { return EqStrategy::Exhaustive; }
  bool idempotent() const override {
    for (std::uint32_t i = 0; i < size(); ++i)
      if (spec_.add[i][i] != i) return false;
    return true;
  }
  Elem zero() const override { return TableVal{spec_.zero}; }
  Elem one() const override { return TableVal{spec_.one}; }
  bool contains(const Elem& a) const override {
    return std::holds_alternative<TableVal>(a) && as<TableVal>(a).index < size();
  }

  std::string format(const Elem& a) const override { return spec_.elements.at(as<TableVal>(a).index); }
  Elem parse(std::string_view text) const override {
    auto t = trimmed(text);
    for (std::uint32_t i = 0; i < size(); ++i)
      if (spec_.elements[i] == t) return TableVal{i};
    throw ParseError("unknown element '" + t + "' of " + name_);
  }
  std::optional<std::vector<Elem>> elements() const override {
    std::vector<Elem> out;
    for (std::uint32_t i = 0; i < size(); ++i) out.emplace_back(TableVal{i});
    return out;
  }
  Elem sample(std::mt19937_64& rng) const override {
    return TableVal{static_cast<std::uint32_t>(uniform(rng, 0, size() - 1))};
  }

 protected:
  Elem add_unchecked(const Elem& a, const Elem& b) const override {
    return TableVal{spec_.add[as<TableVal>(a).index][as<TableVal>(b).index]};
  }
  Elem mul_unchecked(const Elem& a, const Elem& b) const override {
    return TableVal{spec_.mul[as<TableVal>(a).index][as<TableVal>(b).index]};
  }

 private:
  std::uint32_t size() const { return static_cast<std::uint32_t>(spec_.elements.size()); }

  void fail(const std::string& why) const {
    throw ParseError("semiring table '" + name_ + "' invalid: " + why);
  }

  void validate() const {
    const auto n = size();
    if (n < 2) fail("need at least two elements");
    if (n > 256) fail("at most 256 elements supported");
    if (spec_.zero >= n || spec_.one >= n) fail("zero/one out of range");
    if (spec_.zero == spec_.one) fail("zero equals one");
    auto check_matrix = [&](const auto& m, const char* what) {
      if (m.size() != n) fail(std::string(what) + " has wrong row count");
      for (const auto& row : m) {
        if (row.size() != n) fail(std::string(what) + " has wrong column count");
        for (auto v : row)
          if (v >= n) fail(std::string(what) + " entry out of range");
      }
    };
    check_matrix(spec_.add, "add");
    check_matrix(spec_.mul, "mul");
    const auto& A = spec_.add;
    const auto& M = spec_.mul;
    for (std::uint32_t a = 0; a < n; ++a) {
      if (A[a][spec_.zero] != a) fail("zero is not an additive identity");
      if (M[a][spec_.one] != a) fail("one is not a multiplicative identity");
      if (M[a][spec_.zero] != spec_.zero) fail("zero does not annihilate");
      for (std::uint32_t b = 0; b < n; ++b) {
        if (A[a][b] != A[b][a]) fail("addition not commutative");
        if (M[a][b] != M[b][a]) fail("multiplication not commutative");
        for (std::uint32_t c = 0; c < n; ++c) {
          if (A[A[a][b]][c] != A[a][A[b][c]]) fail("addition not associative");
          if (M[M[a][b]][c] != M[a][M[b][c]]) fail("multiplication not associative");
          if (M[a][A[b][c]] != A[M[a][b]][M[a][c]]) fail("distributivity fails");
        }
      }
    }
  }

  std::string name_;
  TableSpec spec_;
};

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("bad " + std::string(what) + ": " + std::string(s));
  return v;
}

}  // namespace

// ---------------------------------------------------------------- factories

SemiringHandle tropical() {
  static const auto s = std::make_shared<const TropicalSemiring>();
  return s;
}
SemiringHandle boolean() {
  static const auto s = std::make_shared<const BooleanSemiring>();
  return s;
}
SemiringHandle naturals() {
  static const auto s = std::make_shared<const NaturalSemiring>();
  return s;
}
SemiringHandle interval() {
  static const auto s = std::make_shared<const IntervalSemiring>();
  return s;
}

SemiringHandle zmod(std::uint32_t modulus) {
  if (modulus < 2 || modulus > 256) throw ParseError("zmod modulus must lie in [2, 256]");
  TableSpec spec;
  spec.zero = 0;
  spec.one = 1;
  spec.add.assign(modulus, std::vector<std::uint32_t>(modulus));
  spec.mul.assign(modulus, std::vector<std::uint32_t>(modulus));
  for (std::uint32_t a = 0; a < modulus; ++a) {
    spec.elements.push_back(std::to_string(a));
    for (std::uint32_t b = 0; b < modulus; ++b) {
      spec.add[a][b] = (a + b) % modulus;
      spec.mul[a][b] = (a * b) % modulus;
    }
  }
  return std::make_shared<const TableSemiring>("zmod:" + std::to_string(modulus), std::move(spec));
}

SemiringHandle free_idempotent(std::uint32_t symbols) {
  if (symbols == 0) throw ParseError("freeidpt needs at least one symbol");
  return std::make_shared<const FreeIdempotentSemiring>(symbols);
}

SemiringHandle make_table_semiring(std::string name, TableSpec spec) {
  return std::make_shared<const TableSemiring>(std::move(name), std::move(spec));
}

SemiringHandle parse_table_semiring(std::string name, std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("semiring table: " + std::string(e.what()));
  }
  TableSpec spec;
  try {
    spec.elements = j.at("elements").get<std::vector<std::string>>();
    auto index_of = [&](const nlohmann::json& v) -> std::uint32_t {
      if (v.is_number_unsigned()) return v.get<std::uint32_t>();
      auto nm = v.get<std::string>();
      auto it = std::find(spec.elements.begin(), spec.elements.end(), nm);
      if (it == spec.elements.end()) throw ParseError("semiring table: unknown element " + nm);
      return static_cast<std::uint32_t>(it - spec.elements.begin());
    };
    spec.zero = index_of(j.at("zero"));
    spec.one = index_of(j.at("one"));
    auto matrix = [&](const char* key) {
      std::vector<std::vector<std::uint32_t>> m;
      for (const auto& row : j.at(key)) {
        auto& r = m.emplace_back();
        for (const auto& v : row) r.push_back(index_of(v));
      }
      return m;
    };
    spec.add = matrix("add");
    spec.mul = matrix("mul");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("semiring table: " + std::string(e.what()));
  }
  return make_table_semiring(std::move(name), std::move(spec));
}

SemiringHandle load_table_semiring(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open semiring table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table_semiring("table:" + path.string(), buf.str());
}

SemiringHandle make_semiring(std::string_view selector) {
  if (selector == "tropical") return tropical();
  if (selector == "boolean") return boolean();
  if (selector == "nat") return naturals();
  if (selector == "interval") return interval();
  if (selector.starts_with("zmod:")) return zmod(parse_u32(selector.substr(5), "modulus"));
  if (selector.starts_with("freeidpt:"))
    return free_idempotent(parse_u32(selector.substr(9), "symbol count"));
  if (selector.starts_with("table:")) return load_table_semiring(std::string(selector.substr(6)));
  throw ParseError("unknown semiring selector: " + std::string(selector));
}

// ---------------------------------------------------------------- finite helpers

std::uint32_t FiniteTables::index_of(const Elem& e) const {
  if (const auto* t = std::get_if<TableVal>(&e)) return t->index;
  for (std::uint32_t i = 0; i < size; ++i)
    if (elements[i] == e) return i;
  throw CarrierMismatch("element outside finite carrier");
}

std::optional<FiniteTables> finite_tables(const Semiring& s) {
  auto elems = s.elements();
  if (!elems || elems->size() > 256) return std::nullopt;
  FiniteTables t;
  t.size = static_cast<std::uint32_t>(elems->size());
  t.elements = std::move(*elems);
  t.add.resize(std::size_t{t.size} * t.size);
  t.mul.resize(std::size_t{t.size} * t.size);
  auto find = [&](const Elem& e) {
    for (std::uint32_t i = 0; i < t.size; ++i)
      if (t.elements[i] == e) return i;
    throw CarrierMismatch("finite carrier not closed");
  };
  t.zero = find(s.zero());
  t.one = find(s.one());
  for (std::uint32_t a = 0; a < t.size; ++a) {
    for (std::uint32_t b = 0; b < t.size; ++b) {
      t.add[a * t.size + b] = static_cast<std::uint8_t>(find(s.add(t.elements[a], t.elements[b])));
      t.mul[a * t.size + b] = static_cast<std::uint8_t>(find(s.mul(t.elements[a], t.elements[b])));
    }
  }
  return t;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> multiplicative_torsion(const Semiring& s) {
  auto tables = finite_tables(s);
  if (!tables) return std::nullopt;
  std::uint64_t start = 1;
  std::uint64_t period = 1;
  for (std::uint32_t a = 0; a < tables->size; ++a) {
    // powers a^1, a^2, ...; first repeat gives preperiod and period
    std::vector<int> seen(tables->size, -1);
    std::uint32_t x = a;
    for (int e = 1;; ++e) {
      if (seen[x] >= 0) {
        start = std::max<std::uint64_t>(start, static_cast<std::uint64_t>(seen[x]));
        period = std::lcm(period, static_cast<std::uint64_t>(e - seen[x]));
        break;
      }
      seen[x] = e;
      x = tables->times(x, a);
    }
    if (period > (1U << 30)) return std::nullopt;
  }
  return std::pair{static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(start + period)};
}

}  // namespace utvar
