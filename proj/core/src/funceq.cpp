#include "utvar/funceq.hpp"

#include <algorithm>
#include <set>

#include "utvar/errors.hpp"
#include "utvar/lp.hpp"

namespace utvar {

std::vector<Var> joint_variables(const FormalPoly& f, const FormalPoly& g) {
  std::set<Var> vars;
  for (const auto& v : f.variables()) vars.insert(v);
  for (const auto& v : g.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

namespace {

void require_same(const FormalPoly& f, const FormalPoly& g) {
  if (!same_semiring(f.semiring(), g.semiring()))
    throw CarrierMismatch("func_equal: polynomials over different semirings");
}

std::vector<Rational> exponent_vector(const Monomial& m, const std::vector<Var>& universe) {
  std::vector<Rational> out(universe.size());
  for (std::size_t k = 0; k < universe.size(); ++k) out[k] = m.exponent(universe[k]);
  return out;
}

const Rational& finite_value(const Elem& e) {
  if (const auto* t = std::get_if<TropicalVal>(&e)) return t->x.value();
  return std::get<IntervalVal>(e).x.value();
}

bool separates(const FormalPoly& f, const FormalPoly& g, const Assignment& point) {
  return evaluate(f, point) != evaluate(g, point);
}

// Cheap falsification before an exact decision: a handful of sampled points.
std::optional<Assignment> probe(const FormalPoly& f, const FormalPoly& g,
                                const std::vector<Var>& universe, int rounds) {
  std::mt19937_64 rng(0x5eedULL + universe.size());
  const auto& s = *f.semiring();
  for (int r = 0; r < rounds; ++r) {
    Assignment point;
    for (const auto& v : universe) point.emplace(v, s.sample(rng));
    if (separates(f, g, point)) return point;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- boolean

FormalPoly boolean_canonical(const FormalPoly& f) {
  std::vector<Monomial> supports;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> clipped;
    for (const auto& fac : m.factors()) clipped.emplace_back(fac.first, 1);
    supports.emplace_back(std::move(clipped));
  }
  auto subset = [](const Monomial& a, const Monomial& b) {
    for (const auto& fac : a.factors())
      if (b.exponent(fac.first) == 0) return false;
    return true;
  };
  FormalPoly out(f.semiring());
  for (std::size_t i = 0; i < supports.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < supports.size() && minimal; ++j) {
      if (supports[j] == supports[i]) continue;
      if (subset(supports[j], supports[i])) minimal = false;
    }
    if (minimal) out.add_term(supports[i], f.semiring()->one());
  }
  return out;
}

EqResult boolean_equal(const FormalPoly& f, const FormalPoly& g) {
  auto cf = boolean_canonical(f);
  auto cg = boolean_canonical(g);
  if (cf == cg) return {};
  // indicator point of the smallest support in the symmetric difference
  std::vector<Monomial> diff;
  for (const auto& [m, c] : cf.terms())
    if (!cg.terms().contains(m)) diff.push_back(m);
  for (const auto& [m, c] : cg.terms())
    if (!cf.terms().contains(m)) diff.push_back(m);
  std::sort(diff.begin(), diff.end(),
            [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  const auto universe = joint_variables(f, g);
  const auto& s = *f.semiring();
  for (const auto& m : diff) {
    Assignment point;
    for (const auto& v : universe) point.emplace(v, m.exponent(v) > 0 ? s.one() : s.zero());
    if (separates(f, g, point)) return {false, point};
  }
  return {false, std::nullopt};  // unreachable for antichains
}

// ---------------------------------------------------------------- finite tables

std::uint64_t point_count(std::uint32_t base, std::size_t vars) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < vars; ++k) {
    total *= base;
    if (total > kExhaustiveCap)
      throw LimitExceeded("exhaustive evaluation exceeds " + std::to_string(kExhaustiveCap) +
                          " points");
  }
  return total;
}

Assignment point_at(std::uint64_t index, const std::vector<Var>& universe, const FiniteTables& t) {
  Assignment point;
  for (std::size_t k = universe.size(); k-- > 0;) {
    point.emplace(universe[k], t.elements[index % t.size]);
    index /= t.size;
  }
  return point;
}

EqResult exhaustive_equal(const FormalPoly& f, const FormalPoly& g) {
  auto tables = finite_tables(*f.semiring());
  if (!tables) throw UnsupportedStrategy("exhaustive strategy needs a finite carrier");
  const auto universe = joint_variables(f, g);
  auto tf = value_table(f, universe, *tables);
  auto tg = value_table(g, universe, *tables);
  for (std::uint64_t i = 0; i < tf.size(); ++i)
    if (tf[i] != tg[i]) return {false, point_at(i, universe, *tables)};
  return {};
}

FormalPoly torsion_reduced(const FormalPoly& f) {
  auto torsion = multiplicative_torsion(*f.semiring());
  if (!torsion) throw UnsupportedStrategy("no multiplicative torsion for " + f.semiring()->name());
  const auto [i, j] = *torsion;
  const auto period = j - i;
  FormalPoly out(f.semiring());
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> factors;
    for (auto [v, e] : m.factors()) {
      if (e >= j) e = i + (e - i) % period;
      factors.emplace_back(v, e);
    }
    out.add_term(Monomial(std::move(factors)), c);
  }
  return out;
}

// ---------------------------------------------------------------- tropical

FeasibilitySystem dominance_system(const Monomial& m, const Rational& coeff, const FormalPoly& g,
                                   const std::vector<Var>& universe) {
  FeasibilitySystem sys;
  sys.dim = universe.size();
  sys.target = exponent_vector(m, universe);
  sys.target_level = coeff;
  for (const auto& [n, d] : g.terms()) {
    sys.generators.push_back(exponent_vector(n, universe));
    sys.levels.push_back(finite_value(d));
  }
  return sys;
}

Assignment tropical_point(const std::vector<Var>& universe, const std::vector<Rational>& x) {
  Assignment point;
  for (std::size_t k = 0; k < universe.size(); ++k) point.emplace(universe[k], TropicalVal{x[k]});
  return point;
}

// Witness for a term of `f` not dominated by `g`, if any.
std::optional<Assignment> tropical_excess(const FormalPoly& f, const FormalPoly& g,
                                          const std::vector<Var>& universe) {
  for (const auto& [m, c] : f.terms()) {
    auto sys = dominance_system(m, finite_value(c), g, universe);
    auto cert = feasible(sys);
    if (!cert.feasible) return tropical_point(universe, cert.separating_point(sys));
  }
  return std::nullopt;
}

EqResult tropical_equal(const FormalPoly& f, const FormalPoly& g) {
  const auto universe = joint_variables(f, g);
  if (auto w = probe(f, g, universe, 8)) return {false, w};
  if (auto w = tropical_excess(f, g, universe)) return {false, w};
  if (auto w = tropical_excess(g, f, universe)) return {false, w};
  return {};
}

FormalPoly tropical_canonical(const FormalPoly& f) {
  FormalPoly current = f;
  for (const auto& [m, c] : f.terms()) {
    FormalPoly rest(f.semiring());
    for (const auto& [n, d] : current.terms())
      if (!(n == m)) rest.add_term(n, d);
    if (rest.is_zero()) continue;
    if (tropical_dominated(m, finite_value(c), rest)) current = std::move(rest);
  }
  return current;
}

// ---------------------------------------------------------------- interval

// Witness x with f's term (coeff, m) strictly above g on the face where
// exactly the variables of m are finite, or nullopt if dominated.
std::optional<Assignment> interval_term_excess(const Monomial& m, const Rational& coeff,
                                               const FormalPoly& g,
                                               const std::vector<Var>& universe) {
  std::vector<Var> live;
  for (const auto& fac : m.factors()) live.push_back(fac.first);
  auto on_face = [&](const Monomial& n) {
    return std::all_of(n.factors().begin(), n.factors().end(), [&](const auto& fac) {
      return std::find(live.begin(), live.end(), fac.first) != live.end();
    });
  };
  auto make_point = [&](const std::vector<Rational>& x) {
    Assignment point;
    for (const auto& v : universe) point.emplace(v, IntervalVal{ExtRational::neg_inf()});
    for (std::size_t k = 0; k < live.size(); ++k) point[live[k]] = IntervalVal{x[k]};
    return point;
  };

  lp::Problem p;
  const std::size_t k = live.size();
  p.num_vars = k + 1;  // x_1..x_k, slack s
  p.free_vars.assign(k + 1, false);
  p.free_vars[k] = true;
  bool any = false;
  for (const auto& [n, d] : g.terms()) {
    if (!on_face(n)) continue;
    any = true;
    std::vector<Rational> below_one(k + 1);
    std::vector<Rational> below_term(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      below_one[i] = n.exponent(live[i]);
      below_term[i] = Rational(n.exponent(live[i])) - Rational(m.exponent(live[i]));
    }
    below_one[k] = 1;
    below_term[k] = 1;
    p.add_row(below_one, lp::Relation::LessEqual, Rational(1) - finite_value(d));
    p.add_row(below_term, lp::Relation::LessEqual, coeff - finite_value(d));
  }
  if (!any) return make_point(std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> bound(k + 1);
    bound[i] = 1;
    p.add_row(bound, lp::Relation::LessEqual, Rational(1));
  }
  p.objective.assign(k + 1, Rational(0));
  p.objective[k] = 1;
  auto r = lp::maximize(p);
  if (r.status != lp::Status::Optimal || sgn(r.value) <= 0) return std::nullopt;
  r.x.resize(k);
  return make_point(r.x);
}

std::optional<Assignment> interval_excess(const FormalPoly& f, const FormalPoly& g,
                                          const std::vector<Var>& universe) {
  for (const auto& [m, c] : f.terms())
    if (auto w = interval_term_excess(m, finite_value(c), g, universe)) return w;
  return std::nullopt;
}

EqResult interval_equal(const FormalPoly& f, const FormalPoly& g) {
  const auto universe = joint_variables(f, g);
  if (auto w = probe(f, g, universe, 8)) return {false, w};
  if (auto w = interval_excess(f, g, universe)) return {false, w};
  if (auto w = interval_excess(g, f, universe)) return {false, w};
  return {};
}

// ---------------------------------------------------------------- formal

// Univariate separation: P != Q formally in one variable.
std::optional<Elem> univariate_separator(const FormalPoly& P, const FormalPoly& Q) {
  const auto& s = *P.semiring();
  if (std::holds_alternative<NatVal>(s.one())) {
    // base-N digits: x = N with every coefficient below N
    Natural N = 1;
    for (const auto* poly : {&P, &Q})
      for (const auto& [m, c] : poly->terms())
        if (std::get<NatVal>(c).n >= N) N = std::get<NatVal>(c).n + 1;
    return NatVal{N};
  }
  if (std::holds_alternative<FreeIdptVal>(s.one())) {
    // t = x1^i with i above every x1-exponent in the coefficients
    std::uint32_t i = 1;
    std::size_t k = std::get<FreeIdptVal>(s.one()).monomials.begin()->size();
    for (const auto* poly : {&P, &Q})
      for (const auto& [m, c] : poly->terms())
        for (const auto& e : std::get<FreeIdptVal>(c).monomials) i = std::max(i, e[0] + 1);
    std::vector<std::uint32_t> t(k, 0);
    t[0] = i;
    return FreeIdptVal{{t}};
  }
  return std::nullopt;
}

// Substitutes the values in `point` and keeps the remaining variables.
FormalPoly substitute(const FormalPoly& p, const Assignment& point) {
  const auto& s = *p.semiring();
  FormalPoly out(p.semiring());
  for (const auto& [m, c] : p.terms()) {
    Elem coeff = c;
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) {
        rest.emplace_back(v, e);
        continue;
      }
      for (std::uint32_t k = 0; k < e; ++k) coeff = s.mul(coeff, it->second);
    }
    out.add_term(Monomial(std::move(rest)), coeff);
  }
  return out;
}

// Separating point for formally distinct p, q over a semiring in which
// distinct one-variable polynomials are distinct functions: induct on the
// number of variables, splitting off the last one.
std::optional<Assignment> formal_separate(const FormalPoly& p, const FormalPoly& q,
                                          std::vector<Var> vars) {
  if (vars.empty()) return Assignment{};
  const Var x = vars.back();
  vars.pop_back();
  std::map<std::uint32_t, std::pair<FormalPoly, FormalPoly>> by_power;
  auto split = [&](const FormalPoly& poly, bool left) {
    for (const auto& [m, c] : poly.terms()) {
      auto e = m.exponent(x);
      auto it = by_power.try_emplace(e, FormalPoly(poly.semiring()), FormalPoly(poly.semiring())).first;
      std::vector<Monomial::Factor> rest;
      for (const auto& fac : m.factors())
        if (!(fac.first == x)) rest.push_back(fac);
      (left ? it->second.first : it->second.second).add_term(Monomial(std::move(rest)), c);
    }
  };
  split(p, true);
  split(q, false);
  for (const auto& [e, pair] : by_power) {
    if (pair.first == pair.second) continue;
    auto rest_point = formal_separate(pair.first, pair.second, vars);
    if (!rest_point) return std::nullopt;
    auto P = substitute(p, *rest_point);
    auto Q = substitute(q, *rest_point);
    auto value = univariate_separator(P, Q);
    if (!value) return std::nullopt;
    rest_point->emplace(x, *value);
    return rest_point;
  }
  return std::nullopt;  // p == q formally
}

EqResult formal_equal(const FormalPoly& f, const FormalPoly& g) {
  if (f == g) return {};
  auto vars = joint_variables(f, g);
  auto point = formal_separate(f, g, vars);
  if (point && !separates(f, g, *point)) point.reset();
  return {false, point};
}

}  // namespace

// ---------------------------------------------------------------- public

std::vector<Rational> FeasibilityCertificate::separating_point(const FeasibilitySystem& sys) const {
  if (feasible) throw Error("separating_point: system is feasible");
  std::vector<Rational> x(sys.dim);
  if (sgn(level_weight) > 0) {
    for (std::size_t k = 0; k < sys.dim; ++k) x[k] = direction[k] / level_weight;
    return x;
  }
  // direction alone separates a from every b_j by at least 1; scale past the
  // level gaps
  Rational t = 1;
  for (const auto& d : sys.levels)
    if (d - sys.target_level + 1 > t) t = d - sys.target_level + 1;
  for (std::size_t k = 0; k < sys.dim; ++k) x[k] = t * direction[k];
  return x;
}

FeasibilityCertificate feasible(const FeasibilitySystem& sys) {
  const std::size_t m = sys.generators.size();
  FeasibilityCertificate cert;
  if (m > 0) {
    lp::Problem p;
    p.num_vars = m;
    std::vector<Rational> ones(m, Rational(1));
    p.add_row(ones, lp::Relation::Equal, Rational(1));
    for (std::size_t k = 0; k < sys.dim; ++k) {
      std::vector<Rational> row(m);
      for (std::size_t j = 0; j < m; ++j) row[j] = sys.generators[j][k];
      p.add_row(row, lp::Relation::Equal, sys.target[k]);
    }
    p.add_row(sys.levels, lp::Relation::GreaterEqual, sys.target_level);
    auto r = lp::maximize(p);
    if (r.status == lp::Status::Optimal) {
      cert.feasible = true;
      cert.weights = std::move(r.x);
      return cert;
    }
  }
  // Farkas alternative in (offset, direction, level_weight)
  lp::Problem alt;
  alt.num_vars = sys.dim + 2;
  alt.free_vars.assign(alt.num_vars, true);
  alt.free_vars[sys.dim + 1] = false;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> row(alt.num_vars);
    row[0] = 1;
    for (std::size_t k = 0; k < sys.dim; ++k) row[1 + k] = sys.generators[j][k];
    row[sys.dim + 1] = sys.levels[j];
    alt.add_row(row, lp::Relation::LessEqual, Rational(0));
  }
  std::vector<Rational> norm(alt.num_vars);
  norm[0] = 1;
  for (std::size_t k = 0; k < sys.dim; ++k) norm[1 + k] = sys.target[k];
  norm[sys.dim + 1] = sys.target_level;
  alt.add_row(norm, lp::Relation::Equal, Rational(1));
  auto r = lp::maximize(alt);
  if (r.status != lp::Status::Optimal) throw Error("feasible: Farkas alternative not solvable");
  cert.offset = r.x[0];
  cert.direction.assign(r.x.begin() + 1, r.x.begin() + 1 + static_cast<std::ptrdiff_t>(sys.dim));
  cert.level_weight = r.x[sys.dim + 1];
  return cert;
}

bool tropical_dominated(const Monomial& m, const Rational& coeff, const FormalPoly& g) {
  if (g.semiring()->eq_strategy() != EqStrategy::TropicalDominance)
    throw UnsupportedStrategy("tropical_dominated needs the tropical semiring");
  if (g.is_zero()) return false;
  std::set<Var> vars;
  for (const auto& fac : m.factors()) vars.insert(fac.first);
  for (const auto& v : g.variables()) vars.insert(v);
  std::vector<Var> universe(vars.begin(), vars.end());
  return feasible(dominance_system(m, coeff, g, universe)).feasible;
}

EqResult func_equal(const FormalPoly& f, const FormalPoly& g) {
  require_same(f, g);
  switch (f.semiring()->eq_strategy()) {
    case EqStrategy::BooleanSupport: return boolean_equal(f, g);
    case EqStrategy::Exhaustive: return exhaustive_equal(f, g);
    case EqStrategy::TropicalDominance: return tropical_equal(f, g);
    case EqStrategy::IntervalDominance: return interval_equal(f, g);
    case EqStrategy::Formal: return formal_equal(f, g);
  }
  throw UnsupportedStrategy("func_equal: unknown strategy");
}

bool supports_canonical_form(const Semiring& s) {
  return s.eq_strategy() != EqStrategy::IntervalDominance;
}

FormalPoly canonicalize(const FormalPoly& f) {
  switch (f.semiring()->eq_strategy()) {
    case EqStrategy::BooleanSupport: return boolean_canonical(f);
    case EqStrategy::TropicalDominance: return tropical_canonical(f);
    case EqStrategy::Exhaustive: return torsion_reduced(f);
    case EqStrategy::Formal: return f;
    case EqStrategy::IntervalDominance: break;
  }
  throw UnsupportedStrategy("no canonical form for polynomial functions over " +
                            f.semiring()->name());
}

bool CanonicalForm::is_zero_function() const {
  if (!tabulated) return rep.is_zero();
  return std::all_of(table.begin(), table.end(), [&](std::uint8_t v) {
    return v == finite_tables(*rep.semiring())->zero;
  });
}

std::string CanonicalForm::key() const {
  if (!tabulated) return to_string(rep);
  std::string k = "#";
  for (auto v : table) k += std::to_string(v) + ",";
  return k;
}

CanonicalForm canonical_form(const FormalPoly& f, const std::vector<Var>& universe) {
  CanonicalForm out{canonicalize(f), {}, false};
  if (f.semiring()->eq_strategy() == EqStrategy::Exhaustive) {
    auto tables = finite_tables(*f.semiring());
    out.table = value_table(out.rep, universe, *tables);
    out.tabulated = true;
  }
  return out;
}

std::vector<std::uint8_t> value_table(const FormalPoly& f, const std::vector<Var>& universe,
                                      const FiniteTables& tables) {
  const auto total = point_count(tables.size, universe.size());
  struct Term {
    std::uint8_t coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;  // universe index, exponent
  };
  std::vector<Term> terms;
  for (const auto& [m, c] : f.terms()) {
    Term t{static_cast<std::uint8_t>(tables.index_of(c)), {}};
    for (const auto& [v, e] : m.factors()) {
      auto it = std::lower_bound(universe.begin(), universe.end(), v);
      if (it == universe.end() || !(*it == v))
        throw Error("value_table: variable " + to_string(v) + " outside universe");
      t.factors.emplace_back(static_cast<std::size_t>(it - universe.begin()), e);
    }
    terms.push_back(std::move(t));
  }
  std::vector<std::uint8_t> out(total);
  std::vector<std::uint32_t> digits(universe.size(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint32_t acc = tables.zero;
    for (const auto& t : terms) {
      std::uint32_t term = t.coeff;
      for (const auto& [idx, e] : t.factors)
        for (std::uint32_t k = 0; k < e; ++k) term = tables.times(term, digits[idx]);
      acc = tables.plus(acc, term);
    }
    out[i] = static_cast<std::uint8_t>(acc);
    for (std::size_t k = universe.size(); k-- > 0;) {
      if (++digits[k] < tables.size) break;
      digits[k] = 0;
    }
  }
  return out;
}

}  // namespace utvar
