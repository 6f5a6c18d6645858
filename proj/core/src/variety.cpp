#include "utvar/variety.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "utvar/errors.hpp"

namespace utvar {

// ---------------------------------------------------------------- matrices

UTMatrix::UTMatrix(int n, SemiringHandle s) : n_(n), s_(std::move(s)) {
  if (n < 1) throw Error("UTMatrix: n must be at least 1");
  entries_.assign(static_cast<std::size_t>(n) * n, s_->zero());
}

UTMatrix UTMatrix::identity(int n, SemiringHandle s) {
  UTMatrix m(n, s);
  for (int i = 1; i <= n; ++i) m.set(i, i, s->one());
  return m;
}

std::size_t UTMatrix::index(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) throw Error("UTMatrix: index out of range");
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

void UTMatrix::set(int i, int j, Elem e) {
  if (!s_->contains(e)) throw CarrierMismatch("UTMatrix: entry outside " + s_->name());
  if (i > j && !s_->is_zero(e)) throw Error("UTMatrix: nonzero entry below the diagonal");
  entries_[index(i, j)] = std::move(e);
}

UTMatrix ut_mul(const UTMatrix& x, const UTMatrix& y) {
  if (x.n() != y.n() || !same_semiring(x.semiring(), y.semiring()))
    throw CarrierMismatch("ut_mul: matrices of different shape or semiring");
  const auto& s = *x.semiring();
  UTMatrix out(x.n(), x.semiring());
  for (int i = 1; i <= x.n(); ++i)
    for (int j = i; j <= x.n(); ++j) {
      Elem acc = s.zero();
      for (int k = i; k <= j; ++k) acc = s.add(acc, s.mul(x.at(i, k), y.at(k, j)));
      out.set(i, j, std::move(acc));
    }
  return out;
}

UTMatrix ut_eval(const Word& w, const MatrixAssignment& assign, int n, const SemiringHandle& s) {
  UTMatrix acc = UTMatrix::identity(n, s);
  for (char c : w) {
    auto it = assign.find(c);
    if (it == assign.end()) throw Error(std::string("ut_eval: no matrix for letter '") + c + "'");
    acc = ut_mul(acc, it->second);
  }
  return acc;
}

std::string to_string(const UTMatrix& m) {
  std::string out = "[";
  for (int i = 1; i <= m.n(); ++i) {
    out += i > 1 ? ", [" : "[";
    for (int j = 1; j <= m.n(); ++j) {
      if (j > 1) out += ", ";
      out += m.semiring()->format(m.at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------- identities

namespace {

Word parse_side(std::string_view text) {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '1')
      throw ParseError(std::string("identity: unexpected character '") + c + "'");
    w.push_back(c);
  }
  if (w == "1") return {};
  if (w.find('1') != Word::npos) throw ParseError("identity: '1' must stand alone");
  return w;
}

}  // namespace

Identity Identity::parse(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos)
    throw ParseError("identity: expected \"u = v\"");
  return {parse_side(text.substr(0, eq)), parse_side(text.substr(eq + 1))};
}

std::string Identity::letters() const {
  std::set<char> s(lhs.begin(), lhs.end());
  s.insert(rhs.begin(), rhs.end());
  return {s.begin(), s.end()};
}

std::string to_string(const Identity& id) {
  return (id.lhs.empty() ? "1" : id.lhs) + " = " + (id.rhs.empty() ? "1" : id.rhs);
}

Identity adjan_identity() { return {"xyyxxyxyyx", "xyyxyxxyyx"}; }

// ---------------------------------------------------------------- checker

MatrixAssignment lift_point(const Path& pi, const Assignment& point, const std::string& letters,
                            int n, const SemiringHandle& s) {
  MatrixAssignment out;
  for (char c : letters) {
    UTMatrix m = UTMatrix::identity(n, s);
    for (int v : pi.vertices) {
      auto it = point.find(Var{c, v});
      m.set(v, v, it == point.end() ? s->one() : it->second);
    }
    for (std::size_t t = 0; t < pi.length(); ++t)
      if (pi.labels[t] == c) m.set(pi.vertices[t], pi.vertices[t + 1], s->one());
    out.emplace(c, std::move(m));
  }
  return out;
}

Verdict check_identity(const Identity& id, int n, const SemiringHandle& s) {
  const auto letters = id.letters();
  Verdict verdict;
  for (const auto& pi : enum_paths(n, letters)) {
    auto cu = f_pi_w(pi, id.lhs);
    auto cv = f_pi_w(pi, id.rhs);
    if (cu == cv) continue;
    auto fu = FormalPoly::from_counts(s, cu);
    auto fv = FormalPoly::from_counts(s, cv);
    auto r = func_equal(fu, fv);
    if (r.equal) continue;
    verdict.holds = false;
    verdict.witness_path = pi;
    if (r.witness) {
      verdict.witness_point = r.witness;
      auto lifted = lift_point(pi, *r.witness, letters, n, s);
      const auto lhs = ut_eval(id.lhs, lifted, n, s);
      const auto rhs = ut_eval(id.rhs, lifted, n, s);
      if (!(lhs.at(pi.source(), pi.target()) == rhs.at(pi.source(), pi.target())))
        verdict.witness_assignment = std::move(lifted);
    }
    return verdict;
  }
  return verdict;
}

// ---------------------------------------------------------------- oracle

namespace {

// Saturating count of substitutions, capped just above `cap`.
std::uint64_t substitution_count(std::uint64_t per_entry, std::size_t entries, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < entries; ++k) {
    if (total > cap / per_entry) return cap + 1;
    total *= per_entry;
  }
  return total;
}

using Cells = std::vector<std::pair<int, int>>;

Cells upper_cells(int n) {
  Cells cells;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) cells.emplace_back(i, j);
  return cells;
}

// Index-level matrices over a finite carrier.
struct TableMatrices {
  const FiniteTables& t;
  int n;

  std::vector<std::uint8_t> identity() const {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n) * n, static_cast<std::uint8_t>(t.zero));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = static_cast<std::uint8_t>(t.one);
    return m;
  }

  void mul_into(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y,
                std::vector<std::uint8_t>& out) const {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::uint32_t acc = t.zero;
        for (int k = i; k <= j; ++k) acc = t.plus(acc, t.times(x[i * n + k], y[k * n + j]));
        out[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(acc);
      }
  }

  std::vector<std::uint8_t> eval(const Word& w, const std::string& letters,
                                 const std::vector<std::vector<std::uint8_t>>& mats) const {
    auto acc = identity();
    auto tmp = acc;
    for (char c : w) {
      mul_into(acc, mats[letters.find(c)], tmp);
      std::swap(acc, tmp);
    }
    return acc;
  }
};

MatrixAssignment to_assignment(const std::string& letters,
                               const std::vector<std::vector<std::uint8_t>>& mats,
                               const FiniteTables& t, int n, const SemiringHandle& s) {
  MatrixAssignment out;
  for (std::size_t l = 0; l < letters.size(); ++l) {
    UTMatrix m(n, s);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) m.set(i, j, t.elements[mats[l][(i - 1) * n + (j - 1)]]);
    out.emplace(letters[l], std::move(m));
  }
  return out;
}

Verdict exhaustive_oracle(const Identity& id, int n, const SemiringHandle& s, const FiniteTables& t,
                          std::uint64_t total) {
  const auto letters = id.letters();
  const auto cells = upper_cells(n);
  TableMatrices tm{t, n};
  std::vector<std::vector<std::uint8_t>> mats(letters.size(), tm.identity());
  for (auto& m : mats)
    for (auto [i, j] : cells) m[(i - 1) * n + (j - 1)] = static_cast<std::uint8_t>(t.zero);
  // mixed-radix counter over every upper cell of every letter's matrix
  std::vector<std::uint32_t> digits(letters.size() * cells.size(), 0);
  Verdict verdict;
  verdict.exhaustive = true;
  for (std::uint64_t k = 0; k < total; ++k) {
    for (std::size_t d = 0; d < digits.size(); ++d) {
      auto [i, j] = cells[d % cells.size()];
      mats[d / cells.size()][(i - 1) * n + (j - 1)] = static_cast<std::uint8_t>(digits[d]);
    }
    ++verdict.substitutions_checked;
    if (tm.eval(id.lhs, letters, mats) != tm.eval(id.rhs, letters, mats)) {
      verdict.holds = false;
      verdict.witness_assignment = to_assignment(letters, mats, t, n, s);
      return verdict;
    }
    for (std::size_t d = digits.size(); d-- > 0;) {
      if (++digits[d] < t.size) break;
      digits[d] = 0;
    }
  }
  return verdict;
}

Verdict sampling_oracle(const Identity& id, int n, const SemiringHandle& s, const OracleOptions& opts) {
  const auto letters = id.letters();
  std::mt19937_64 rng(opts.seed);
  Verdict verdict;
  verdict.seed = opts.seed;
  for (std::uint64_t k = 0; k < opts.budget; ++k) {
    MatrixAssignment assign;
    for (char c : letters) {
      UTMatrix m(n, s);
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) m.set(i, j, s->sample(rng));
      assign.emplace(c, std::move(m));
    }
    ++verdict.substitutions_checked;
    if (!(ut_eval(id.lhs, assign, n, s) == ut_eval(id.rhs, assign, n, s))) {
      verdict.holds = false;
      verdict.witness_assignment = std::move(assign);
      return verdict;
    }
  }
  verdict.budget_exhausted = true;
  return verdict;
}

}  // namespace

Verdict oracle_check(const Identity& id, int n, const SemiringHandle& s, OracleOptions opts) {
  if (auto t = finite_tables(*s)) {
    const auto letters = id.letters();
    const auto total = substitution_count(t->size, letters.size() * upper_cells(n).size(), opts.budget);
    if (total <= opts.budget) return exhaustive_oracle(id, n, s, *t, total);
  }
  return sampling_oracle(id, n, s, opts);
}

bool verify_witness(const Verdict& v, const Identity& id, int n, const SemiringHandle& s) {
  if (v.holds || !v.witness_assignment) return false;
  return !(ut_eval(id.lhs, *v.witness_assignment, n, s) == ut_eval(id.rhs, *v.witness_assignment, n, s));
}

// ---------------------------------------------------------------- JSON

namespace {

Var parse_var(const std::string& text) {
  auto us = text.find('_');
  if (us != 1 || text.size() < 3) throw ParseError("bad variable name '" + text + "'");
  return Var{text[0], std::stoi(text.substr(2))};
}

}  // namespace

std::string verdict_to_json(const Verdict& v, const Identity& id, int n, const SemiringHandle& s) {
  nlohmann::ordered_json j;
  j["identity"] = to_string(id);
  j["semiring"] = s->name();
  j["n"] = n;
  j["holds"] = v.holds;
  if (v.witness_path)
    j["witness_path"] = {{"vertices", v.witness_path->vertices}, {"labels", v.witness_path->labels}};
  else
    j["witness_path"] = nullptr;
  if (v.witness_assignment) {
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [c, m] : *v.witness_assignment) {
      auto rows = nlohmann::ordered_json::array();
      for (int i = 1; i <= n; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int jj = 1; jj <= n; ++jj) row.push_back(s->format(m.at(i, jj)));
        rows.push_back(row);
      }
      a[std::string(1, c)] = rows;
    }
    j["witness_assignment"] = a;
  } else {
    j["witness_assignment"] = nullptr;
  }
  if (v.witness_point) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [var, e] : *v.witness_point) p[to_string(var)] = s->format(e);
    j["witness_point"] = p;
  } else {
    j["witness_point"] = nullptr;
  }
  j["seed"] = v.seed ? nlohmann::ordered_json(*v.seed) : nlohmann::ordered_json(nullptr);
  j["substitutions_checked"] = v.substitutions_checked;
  j["exhaustive"] = v.exhaustive;
  j["budget_exhausted"] = v.budget_exhausted;
  return j.dump();
}

Verdict verdict_from_json(std::string_view text, const SemiringHandle& s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Verdict v;
    const int n = j.at("n").get<int>();
    v.holds = j.at("holds").get<bool>();
    if (!j.at("witness_path").is_null())
      v.witness_path = Path{j["witness_path"].at("vertices").get<std::vector<int>>(),
                            j["witness_path"].at("labels").get<std::string>()};
    if (!j.at("witness_assignment").is_null()) {
      MatrixAssignment a;
      for (const auto& [key, rows] : j["witness_assignment"].items()) {
        UTMatrix m(n, s);
        for (int i = 1; i <= n; ++i)
          for (int jj = 1; jj <= n; ++jj) m.set(i, jj, s->parse(rows.at(i - 1).at(jj - 1).get<std::string>()));
        a.emplace(key.at(0), std::move(m));
      }
      v.witness_assignment = std::move(a);
    }
    if (j.contains("witness_point") && !j["witness_point"].is_null()) {
      Assignment p;
      for (const auto& [key, val] : j["witness_point"].items())
        p.emplace(parse_var(key), s->parse(val.get<std::string>()));
      v.witness_point = std::move(p);
    }
    if (!j.at("seed").is_null()) v.seed = j["seed"].get<std::uint64_t>();
    v.substitutions_checked = j.value("substitutions_checked", std::uint64_t{0});
    v.exhaustive = j.value("exhaustive", false);
    v.budget_exhausted = j.value("budget_exhausted", false);
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- free objects

namespace {

std::vector<Var> path_universe(const Path& p, const std::string& alphabet) {
  std::vector<Var> vars;
  for (int v : p.vertices)
    for (char c : alphabet) vars.push_back(Var{c, v});
  std::sort(vars.begin(), vars.end());
  return vars;
}

std::string sorted_letters(std::string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

FreeElem make_free_elem(QAElem rep, std::string alphabet) {
  alphabet = sorted_letters(std::move(alphabet));
  for (const auto& [p, c] : rep.terms())
    for (char l : p.labels)
      if (alphabet.find(l) == std::string::npos)
        throw Error(std::string("free element: letter '") + l + "' outside the alphabet");
  FreeElem out(QAElem(rep.n(), rep.semiring()), alphabet);
  if (!supports_canonical_form(*rep.semiring())) {
    out.rep_ = std::move(rep);
    return out;
  }
  for (const auto& p : enum_paths(rep.n(), alphabet)) {
    auto cf = canonical_form(rep.coeff(p), path_universe(p, alphabet));
    out.keys_.emplace(p, cf.key());
    out.rep_.add_term(p, cf.rep);
  }
  return out;
}

std::string FreeElem::key() const {
  if (!canonical()) throw UnsupportedStrategy("no canonical forms over " + semiring()->name());
  std::string k;
  for (const auto& [p, key] : keys_) k += to_string(p) + "=" + key + ";";
  return k;
}

FreeElem free_elem(const Word& w, int n, const SemiringHandle& s, std::string alphabet) {
  return make_free_elem(rho(w, n, s), alphabet.empty() ? w : alphabet + w);
}

FreeElem free_identity(int n, const SemiringHandle& s, const std::string& alphabet) {
  return make_free_elem(QAElem::identity(n, s), alphabet);
}

FreeElem free_mul(const FreeElem& x, const FreeElem& y) {
  return make_free_elem(x.rep() * y.rep(), x.alphabet() + y.alphabet());
}

bool free_eq(const FreeElem& x, const FreeElem& y) {
  if (x.n() != y.n() || !same_semiring(x.semiring(), y.semiring()))
    throw CarrierMismatch("free_eq: elements of different free objects");
  if (x.canonical() && y.canonical() && x.alphabet() == y.alphabet()) return x.keys_ == y.keys_;
  std::set<Path> paths;
  for (const auto* e : {&x, &y})
    for (const auto& kv : e->rep().terms()) paths.insert(kv.first);
  return std::all_of(paths.begin(), paths.end(), [&](const Path& p) {
    return func_equal(x.rep().coeff(p), y.rep().coeff(p)).equal;
  });
}

}  // namespace utvar
