#include "utvar/poly.hpp"

#include <algorithm>
#include <set>

#include "utvar/errors.hpp"

namespace utvar {

std::string to_string(const Var& v) {
  return std::string(1, v.letter) + "_" + std::to_string(v.vertex);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(v, e);
  }
}

Monomial Monomial::variable(Var v, std::uint32_t exponent) {
  return Monomial({{v, exponent}});
}

std::uint32_t Monomial::exponent(const Var& v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::letter_degree(char letter) const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : factors_)
    if (v.letter == letter) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::without_vertex(int vertex) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first.vertex != vertex) out.factors_.push_back(f);
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

Monomial abelianize(std::string_view w, int vertex) {
  std::vector<Monomial::Factor> factors;
  for (char c : w) factors.emplace_back(Var{c, vertex}, 1);
  return Monomial(std::move(factors));
}

// ---------------------------------------------------------------- CountPoly

CountPoly CountPoly::monomial(Monomial m, std::uint64_t count) {
  CountPoly p;
  p.add_term(m, count);
  return p;
}

std::uint64_t CountPoly::total_count() const {
  std::uint64_t t = 0;
  for (const auto& [m, c] : terms_) t += c;
  return t;
}

void CountPoly::add_term(const Monomial& m, std::uint64_t count) {
  if (count == 0) return;
  terms_[m] += count;
}

CountPoly& CountPoly::operator+=(const CountPoly& other) {
  for (const auto& [m, c] : other.terms_) terms_[m] += c;
  return *this;
}

CountPoly CountPoly::operator+(const CountPoly& other) const {
  CountPoly out = *this;
  out += other;
  return out;
}

CountPoly CountPoly::operator*(const CountPoly& other) const {
  CountPoly out;
  for (const auto& [m, c] : terms_)
    for (const auto& [n, d] : other.terms_) out.add_term(m * n, c * d);
  return out;
}

CountPoly CountPoly::times(const Monomial& m) const {
  CountPoly out;
  for (const auto& [n, c] : terms_) out.terms_.emplace(n * m, c);
  return out;
}

std::string to_string(const CountPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, std::uint64_t>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return PrintOrder{}(a.first, b.first); });
  std::string out;
  for (const auto& [m, c] : terms) {
    if (!out.empty()) out += " + ";
    if (c != 1) {
      out += std::to_string(c);
      if (!m.is_one()) out += '*' + to_string(m);
    } else {
      out += to_string(m);
    }
  }
  return out;
}

// ---------------------------------------------------------------- FormalPoly

FormalPoly FormalPoly::constant(SemiringHandle s, const Elem& c) {
  return monomial(std::move(s), Monomial{}, c);
}

FormalPoly FormalPoly::monomial(SemiringHandle s, Monomial m) {
  auto one = s->one();
  return monomial(std::move(s), std::move(m), one);
}

FormalPoly FormalPoly::monomial(SemiringHandle s, Monomial m, const Elem& c) {
  FormalPoly p(std::move(s));
  p.add_term(m, c);
  return p;
}

FormalPoly FormalPoly::from_counts(SemiringHandle s, const CountPoly& counts) {
  FormalPoly p(std::move(s));
  for (const auto& [m, c] : counts.terms()) p.add_term(m, p.s_->nat(c));
  return p;
}

std::vector<Var> FormalPoly::variables() const {
  std::set<Var> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vars.insert(f.first);
  return {vars.begin(), vars.end()};
}

void FormalPoly::add_term(const Monomial& m, const Elem& c) {
  if (!s_->contains(c)) throw CarrierMismatch("coefficient outside carrier of " + s_->name());
  if (s_->is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = s_->add(it->second, c);
  if (s_->is_zero(it->second)) terms_.erase(it);
}

void FormalPoly::require_same(const FormalPoly& other) const {
  if (!same_semiring(s_, other.s_))
    throw CarrierMismatch("polynomials over different semirings: " + s_->name() + " vs " +
                          other.s_->name());
}

FormalPoly& FormalPoly::operator+=(const FormalPoly& other) {
  require_same(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

FormalPoly FormalPoly::operator+(const FormalPoly& other) const {
  FormalPoly out = *this;
  out += other;
  return out;
}

FormalPoly FormalPoly::operator*(const FormalPoly& other) const {
  require_same(other);
  FormalPoly out(s_);
  for (const auto& [m, c] : terms_)
    for (const auto& [n, d] : other.terms_) out.add_term(m * n, s_->mul(c, d));
  return out;
}

bool operator==(const FormalPoly& a, const FormalPoly& b) {
  return same_semiring(a.s_, b.s_) && a.terms_ == b.terms_;
}

Elem evaluate(const FormalPoly& p, const Assignment& point) {
  const auto& s = *p.semiring();
  Elem total = s.zero();
  for (const auto& [m, c] : p.terms()) {
    Elem term = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw Error("evaluate: no value assigned to " + to_string(v));
      for (std::uint32_t k = 0; k < e; ++k) term = s.mul(term, it->second);
    }
    total = s.add(total, term);
  }
  return total;
}

FormalPoly delta(const FormalPoly& p, int n) {
  FormalPoly out(p.semiring());
  for (const auto& [m, c] : p.terms()) out.add_term(m.without_vertex(n), c);
  return out;
}

std::string to_string(const FormalPoly& p) {
  if (p.is_zero()) return "0";
  const auto& s = *p.semiring();
  std::vector<const std::pair<const Monomial, Elem>*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto* a, const auto* b) { return PrintOrder{}(a->first, b->first); });
  std::string out;
  for (const auto* t : terms) {
    if (!out.empty()) out += " + ";
    if (s.is_one(t->second)) {
      out += to_string(t->first);
    } else {
      auto coeff = s.format(t->second);
      if (coeff.find(' ') != std::string::npos && !t->first.is_one()) coeff = "(" + coeff + ")";
      out += coeff;
      if (!t->first.is_one()) out += '*' + to_string(t->first);
    }
  }
  return out;
}

}  // namespace utvar
