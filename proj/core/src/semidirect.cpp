#include "utvar/semidirect.hpp"

#include <algorithm>

#include "utvar/errors.hpp"
#include "utvar/funceq.hpp"

namespace utvar {

GElem GElem::identity(SemiringHandle s, const std::string& alphabet) {
  GElem g{s, {}, FormalPoly::constant(s, s->one())};
  for (char c : alphabet) g.b.emplace(c, FormalPoly(s));
  return g;
}

FormalPoly GElem::coordinate(char letter) const {
  auto it = b.find(letter);
  return it == b.end() ? FormalPoly(semiring) : it->second;
}

GElem g_mul(const GElem& x, const GElem& y) {
  if (!same_semiring(x.semiring, y.semiring)) throw CarrierMismatch("g_mul: different semirings");
  GElem out{x.semiring, {}, x.a * y.a};
  for (const auto* side : {&x.b, &y.b})
    for (const auto& kv : *side) out.b.emplace(kv.first, FormalPoly(x.semiring));
  for (auto& [letter, poly] : out.b) poly = x.coordinate(letter) + x.a * y.coordinate(letter);
  return out;
}

bool equivalent(const GElem& x, const GElem& y) {
  if (!func_equal(x.a, y.a).equal) return false;
  std::string letters;
  for (const auto* side : {&x.b, &y.b})
    for (const auto& kv : *side) letters += kv.first;
  return std::all_of(letters.begin(), letters.end(), [&](char c) {
    return func_equal(x.coordinate(c), y.coordinate(c)).equal;
  });
}

bool operator==(const GElem& x, const GElem& y) {
  if (!same_semiring(x.semiring, y.semiring) || !(x.a == y.a)) return false;
  for (const auto* side : {&x.b, &y.b})
    for (const auto& kv : *side)
      if (!(x.coordinate(kv.first) == y.coordinate(kv.first))) return false;
  return true;
}

GElem alpha(const QAElem& p, const std::string& alphabet) {
  if (p.n() != 2) throw Error("alpha: requires n = 2");
  const auto& s = p.semiring();
  auto check_vertex_one = [](const FormalPoly& f) {
    for (const auto& v : f.variables())
      if (v.vertex != 1) throw NotInImage("alpha: coefficient mentions " + to_string(v));
  };
  GElem g = GElem::identity(s, alphabet);
  g.a = p.coeff(Path::empty(1));
  if (g.a.size() != 1) throw NotInImage("alpha: <1> coefficient is not a monomial function");
  check_vertex_one(g.a);
  for (const auto& [path, c] : p.terms()) {
    if (path.length() != 1) continue;
    const char letter = path.labels[0];
    if (alphabet.find(letter) == std::string::npos)
      throw Error(std::string("alpha: letter '") + letter + "' outside the alphabet");
    check_vertex_one(c);
    g.b.insert_or_assign(letter, c);
  }
  return g;
}

QAElem alpha_recover(const GElem& g) {
  QAElem out(2, g.semiring);
  out.add_term(Path::empty(1), g.a);
  out.add_term(Path::empty(2), FormalPoly::constant(g.semiring, g.semiring->one()));
  for (const auto& [letter, c] : g.b) out.add_term(Path{{1, 2}, std::string(1, letter)}, c);
  return out;
}

namespace {

std::string spell(const FormalPoly& f) {
  if (f.is_zero()) return "0";
  const auto& s = *f.semiring();
  std::vector<std::pair<Monomial, Elem>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& x, const auto& y) { return PrintOrder{}(x.first, y.first); });
  std::string out;
  for (const auto& [m, c] : terms) {
    if (!out.empty()) out += '+';
    std::string word;
    for (const auto& [v, e] : m.factors()) word += std::string(e, v.letter);
    if (s.is_one(c)) {
      out += word.empty() ? "1" : word;
    } else {
      out += s.format(c);
      if (!word.empty()) out += "*" + word;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const GElem& g, bool unicode) {
  const std::string arrow = unicode ? " ↦ " : " -> ";
  std::string out = "((";
  bool first = true;
  for (const auto& [letter, c] : g.b) {
    if (!first) out += ", ";
    first = false;
    out += std::string(1, letter) + arrow + spell(c);
  }
  return out + "), " + spell(g.a) + ")";
}

}  // namespace utvar
