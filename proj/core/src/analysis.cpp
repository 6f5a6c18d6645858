#include "utvar/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "utvar/errors.hpp"

namespace utvar {

// ---------------------------------------------------------------- torsion

namespace {

const Var kX{'x', 1};

FormalPoly power(const SemiringHandle& s, std::uint32_t e) {
  return FormalPoly::monomial(s, Monomial::variable(kX, e));
}

Elem power_value(const Semiring& s, const Elem& x, std::uint32_t e) {
  Elem acc = s.one();
  for (std::uint32_t k = 0; k < e; ++k) acc = s.mul(acc, x);
  return acc;
}

using Family = std::function<Elem(std::uint32_t i, std::uint32_t j)>;

// Elements separating x^i from x^j for every i < j, for the shipped
// infinite semirings.
std::optional<std::pair<Family, std::string>> non_torsion_family(const Semiring& s) {
  const auto& name = s.name();
  if (name == "tropical")
    return std::pair{Family([](auto, auto) { return Elem(TropicalVal{Rational(1)}); }),
                     std::string("x = 1 (x^i = i)")};
  if (name == "nat")
    return std::pair{Family([](auto, auto) { return Elem(NatVal{Natural(2)}); }),
                     std::string("x = 2 (x^i = 2^i)")};
  if (name == "interval")
    return std::pair{Family([](auto, std::uint32_t j) { return Elem(IntervalVal{Rational(1, j)}); }),
                     std::string("x = 1/j (x^i = i/j < 1 = x^j)")};
  if (name.rfind("freeidpt:", 0) == 0) {
    auto one = std::get<FreeIdptVal>(s.one());
    auto gen = *one.monomials.begin();
    gen[0] = 1;
    return std::pair{Family([gen](auto, auto) { return Elem(FreeIdptVal{{gen}}); }),
                     std::string("x = x1 (x^i = x1^i)")};
  }
  return std::nullopt;
}

}  // namespace

TorsionWitness torsion_search(const SemiringHandle& s, std::uint32_t bound) {
  TorsionWitness w;
  w.bound = bound;
  for (std::uint32_t i = 1; i <= bound; ++i)
    for (std::uint32_t j = i + 1; j <= bound; ++j) {
      auto r = func_equal(power(s, i), power(s, j));
      if (r.equal) {
        w.found = true;
        w.i = i;
        w.j = j;
        return w;
      }
      TorsionFalsifier f{i, j, std::nullopt};
      if (r.witness) f.point = r.witness->at(kX);
      w.falsifiers.push_back(std::move(f));
    }
  return w;
}

std::string_view to_string(Finiteness f) {
  switch (f) {
    case Finiteness::LocallyFinite: return "locally finite";
    case Finiteness::NotLocallyFinite: return "not locally finite";
    case Finiteness::Unknown: return "unknown";
  }
  return "unknown";
}

FinitenessReport local_finiteness_report(const SemiringHandle& s, int n, std::uint32_t bound) {
  FinitenessReport r;
  r.semiring = s->name();
  r.n = n;
  r.torsion = torsion_search(s, bound);
  if (r.torsion.found) {
    r.verdict = Finiteness::LocallyFinite;
    r.certified = "(iii)";
    return r;
  }
  if (auto t = multiplicative_torsion(*s)) {
    // finite carrier whose torsion lies beyond the search bound
    r.torsion.found = true;
    r.torsion.i = t->first;
    r.torsion.j = t->second;
    r.verdict = Finiteness::LocallyFinite;
    r.certified = "(iii)";
    return r;
  }
  auto family = non_torsion_family(*s);
  if (!family) return r;
  // the family must really falsify every checked pair
  for (const auto& f : r.torsion.falsifiers) {
    auto x = family->first(f.i, f.j);
    if (power_value(*s, x, f.i) == power_value(*s, x, f.j)) return r;
  }
  r.verdict = Finiteness::NotLocallyFinite;
  r.certified = "not (iii)";
  r.falsifier_family = family->second;

  std::vector<FreeElem> powers;
  for (std::uint32_t m = 0; m <= bound; ++m) powers.push_back(free_elem(Word(m, 'a'), n, s, "a"));
  std::size_t distinct = 0;
  for (std::size_t a = 0; a < powers.size(); ++a) {
    bool fresh = true;
    for (std::size_t b = 0; b < a && fresh; ++b) fresh = !free_eq(powers[a], powers[b]);
    distinct += fresh;
  }
  r.distinct_powers = distinct;
  return r;
}

std::string FinitenessReport::summary() const {
  std::ostringstream out;
  if (torsion.found) {
    out << "torsion (" << torsion.i << "," << torsion.j << "); locally finite";
  } else if (verdict == Finiteness::NotLocallyFinite) {
    out << "no torsion identity up to " << torsion.bound << "; not locally finite for any n ≥ 1";
  } else {
    out << "no torsion identity up to " << torsion.bound << "; local finiteness unknown";
  }
  return out.str();
}

std::string FinitenessReport::to_json() const {
  nlohmann::ordered_json j;
  j["semiring"] = semiring;
  j["n"] = n;
  j["verdict"] = std::string(utvar::to_string(verdict));
  j["certified"] = certified;
  j["bound"] = torsion.bound;
  if (torsion.found)
    j["torsion"] = {torsion.i, torsion.j};
  else
    j["torsion"] = nullptr;
  if (!falsifier_family.empty()) j["falsifier_family"] = falsifier_family;
  if (distinct_powers) j["distinct_powers"] = *distinct_powers;
  j["summary"] = summary();
  return j.dump();
}

// ---------------------------------------------------------------- free objects

CayleyTable enumerate_free(int n, const SemiringHandle& s, int rank, std::size_t limit, bool monoid) {
  if (rank < 1 || rank > 26) throw Error("enumerate_free: rank must be in 1..26");
  if (!supports_canonical_form(*s))
    throw UnsupportedStrategy("enumerate_free needs canonical forms over " + s->name());
  CayleyTable t;
  t.monoid = monoid;
  for (int k = 0; k < rank; ++k) t.alphabet.push_back(static_cast<char>('a' + k));

  std::vector<FreeElem> gens;
  for (char c : t.alphabet) gens.push_back(free_elem(std::string(1, c), n, s, t.alphabet));

  std::vector<FreeElem> elems;
  std::unordered_map<std::string, std::uint32_t> index;
  auto intern = [&](FreeElem e, std::string word) {
    auto key = e.key();
    auto [it, fresh] = index.try_emplace(key, static_cast<std::uint32_t>(elems.size()));
    if (fresh) {
      if (elems.size() >= limit)
        throw LimitExceeded("free object exceeds " + std::to_string(limit) + " elements");
      t.words.push_back(std::move(word));
      t.keys.push_back(key);
      t.display.push_back(to_string(e.rep()));
      elems.push_back(std::move(e));
    }
    return it->second;
  };

  if (monoid) intern(free_identity(n, s, t.alphabet), "");
  for (std::size_t g = 0; g < gens.size(); ++g) intern(gens[g], std::string(1, t.alphabet[g]));
  for (std::size_t e = 0; e < elems.size(); ++e) {
    std::vector<std::uint32_t> row;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      auto word = t.words[e] + t.alphabet[g];
      row.push_back(intern(free_mul(elems[e], gens[g]), word));
    }
    t.table.push_back(std::move(row));
  }
  return t;
}

std::string CayleyTable::to_csv() const {
  std::string out = "element,word";
  for (char c : alphabet) out += std::string(",") + c;
  out += "\n";
  for (std::size_t e = 0; e < size(); ++e) {
    out += std::to_string(e) + "," + (words[e].empty() ? "1" : words[e]);
    for (auto v : table[e]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

std::string CayleyTable::to_json() const {
  nlohmann::ordered_json j;
  j["alphabet"] = alphabet;
  j["monoid"] = monoid;
  j["size"] = size();
  auto elems = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < size(); ++e)
    elems.push_back({{"index", e}, {"word", words[e]}, {"canonical", display[e]}});
  j["elements"] = elems;
  j["table"] = table;
  return j.dump();
}

std::size_t qa_closure(const std::vector<QAElem>& generators, std::size_t limit) {
  if (generators.empty()) return 0;
  const auto& s = generators.front().semiring();
  if (!supports_canonical_form(*s)) throw UnsupportedStrategy("qa_closure needs canonical forms");
  std::set<Var> vars;
  for (const auto& g : generators)
    for (const auto& [p, c] : g.terms())
      for (const auto& v : c.variables()) vars.insert(v);
  const std::vector<Var> universe(vars.begin(), vars.end());
  auto key = [&](const QAElem& q) {
    std::string k;
    for (const auto& [p, c] : q.terms()) {
      auto cf = canonical_form(c, universe);
      if (cf.is_zero_function()) continue;
      k += to_string(p) + "=" + cf.key() + ";";
    }
    return k;
  };
  std::map<std::string, QAElem> seen;
  std::deque<QAElem> queue;
  for (const auto& g : generators)
    if (seen.try_emplace(key(g), g).second) queue.push_back(g);
  while (!queue.empty()) {
    auto x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      auto y = x * g;
      if (seen.try_emplace(key(y), y).second) {
        if (seen.size() > limit)
          throw LimitExceeded("closure exceeds " + std::to_string(limit) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

// ---------------------------------------------------------------- identities in S

bool multiplicative_identity_holds(const Identity& id, const SemiringHandle& s) {
  auto side = [&](const Word& w) { return FormalPoly::monomial(s, abelianize(w, 1)); };
  return func_equal(side(id.lhs), side(id.rhs)).equal;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> torsion_from_identity(const Identity& id) {
  auto count = [](const Word& w, char c) {
    return static_cast<std::uint32_t>(std::count(w.begin(), w.end(), c));
  };
  for (char sigma : id.letters()) {
    const auto a = count(id.lhs, sigma);
    const auto b = count(id.rhs, sigma);
    if (a == b) continue;
    const auto U = static_cast<std::uint32_t>(id.lhs.size());
    const auto V = static_cast<std::uint32_t>(id.rhs.size());
    // candidate substitutions: sigma -> x (others -> 1), all -> x,
    // sigma -> x^2 (others -> x)
    const std::pair<std::uint32_t, std::uint32_t> candidates[] = {{a, b}, {U, V}, {U + a, V + b}};
    for (auto [p, q] : candidates)
      if (p != q && p > 0 && q > 0) return std::pair{std::min(p, q), std::max(p, q)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- bicyclic

BicyclicElem bicyclic_mul(const BicyclicElem& x, const BicyclicElem& y) {
  const auto t = std::max(x.j, y.i);
  return {x.i + t - x.j, y.j + t - y.i};
}

UTMatrix bicyclic_embed(const BicyclicElem& x) {
  const auto s = tropical();
  const Rational i(static_cast<unsigned long>(x.i));
  const Rational j(static_cast<unsigned long>(x.j));
  UTMatrix m(2, s);
  m.set(1, 1, TropicalVal{Rational(i - j)});
  m.set(1, 2, TropicalVal{Rational(i + j)});
  m.set(2, 2, TropicalVal{Rational(j - i)});
  return m;
}

EmbeddingCheck verify_embedding(std::uint64_t bound) {
  EmbeddingCheck check;
  std::vector<UTMatrix> images;
  std::vector<BicyclicElem> elems;
  for (std::uint64_t i = 0; i <= bound; ++i)
    for (std::uint64_t j = 0; j <= bound; ++j) {
      elems.push_back({i, j});
      images.push_back(bicyclic_embed({i, j}));
    }
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      ++check.products_checked;
      if (!(ut_mul(images[a], images[b]) == bicyclic_embed(bicyclic_mul(elems[a], elems[b])))) {
        check.morphism = false;
        check.failure = "morphism fails at (" + std::to_string(elems[a].i) + "," +
                        std::to_string(elems[a].j) + ")*(" + std::to_string(elems[b].i) + "," +
                        std::to_string(elems[b].j) + ")";
        return check;
      }
    }
  std::map<std::string, std::size_t> seen;
  for (std::size_t a = 0; a < images.size(); ++a) {
    auto [it, fresh] = seen.emplace(to_string(images[a]), a);
    if (!fresh) {
      check.injective = false;
      check.failure = "images of (" + std::to_string(elems[a].i) + "," + std::to_string(elems[a].j) +
                      ") and an earlier element coincide";
      return check;
    }
  }
  return check;
}

// ---------------------------------------------------------------- prefix abelianization

HElem prefix_abelianization_embed(const Word& w) {
  if (w.empty()) throw Error("prefix_abelianization_embed: empty word");
  HElem h;
  for (std::size_t k = 1; k <= w.size(); ++k) h.prefixes.insert(abelianize(w.substr(0, k), 1));
  h.content = abelianize(w, 1);
  return h;
}

HElem h_mul(const HElem& x, const HElem& y) {
  HElem out{x.prefixes, x.content * y.content};
  for (const auto& m : y.prefixes) out.prefixes.insert(x.content * m);
  return out;
}

std::string to_string(const HElem& h) {
  auto spell = [](const Monomial& m) {
    std::string out;
    for (const auto& [v, e] : m.factors()) {
      out += v.letter;
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  };
  std::vector<Monomial> ps(h.prefixes.begin(), h.prefixes.end());
  std::sort(ps.begin(), ps.end(), [](const Monomial& a, const Monomial& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
  });
  std::string out = "({";
  for (std::size_t k = 0; k < ps.size(); ++k) out += (k ? ", " : "") + spell(ps[k]);
  return out + "}, " + spell(h.content) + ")";
}

}  // namespace utvar
