#include "utvar/quiver.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "utvar/errors.hpp"

namespace utvar {

bool Path::loop_free() const {
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] <= vertices[i - 1]) return false;
  return true;
}

Path Path::operator*(const Path& other) const {
  if (target() != other.source()) throw Error("path concatenation: endpoints do not meet");
  Path out = *this;
  out.vertices.insert(out.vertices.end(), other.vertices.begin() + 1, other.vertices.end());
  out.labels += other.labels;
  return out;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (auto c = a.vertices <=> b.vertices; c != 0) return c;
  return a.labels.compare(b.labels) <=> 0;
}

std::string to_string(const Path& p) {
  std::string out = "<" + std::to_string(p.vertices[0]);
  for (std::size_t i = 0; i < p.labels.size(); ++i)
    out += std::string(" -") + p.labels[i] + "-> " + std::to_string(p.vertices[i + 1]);
  return out + ">";
}

std::vector<Path> enum_paths(int n, const std::string& sigma, int max_len) {
  if (n < 1) throw Error("enum_paths: n must be at least 1");
  std::string letters = sigma;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

  std::vector<Path> out;
  std::vector<Path> frontier;
  for (int v = 1; v <= n; ++v) frontier.push_back(Path::empty(v));
  int len = 0;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (max_len >= 0 && len >= max_len) break;
    std::vector<Path> next;
    for (const auto& p : frontier)
      for (int v = p.target() + 1; v <= n; ++v)
        for (char c : letters) {
          Path q = p;
          q.vertices.push_back(v);
          q.labels.push_back(c);
          next.push_back(std::move(q));
        }
    frontier = std::move(next);
    ++len;
  }
  return out;
}

namespace {

void ambles_from(const Path& pi, const Word& w, std::size_t pos, std::size_t t, Path& current,
                 std::vector<Path>& out) {
  if (pos == w.size()) {
    if (t == pi.length()) out.push_back(current);
    return;
  }
  // not enough letters left to finish pi
  if (w.size() - pos < pi.length() - t) return;
  const char c = w[pos];
  const int here = pi.vertices[t];
  current.vertices.push_back(here);
  current.labels.push_back(c);
  ambles_from(pi, w, pos + 1, t, current, out);
  current.vertices.pop_back();
  current.labels.pop_back();
  if (t < pi.length() && pi.labels[t] == c) {
    current.vertices.push_back(pi.vertices[t + 1]);
    current.labels.push_back(c);
    ambles_from(pi, w, pos + 1, t + 1, current, out);
    current.vertices.pop_back();
    current.labels.pop_back();
  }
}

}  // namespace

std::vector<Path> enum_ambles(const Path& pi, const Word& w) {
  std::vector<Path> out;
  Path current = Path::empty(pi.source());
  ambles_from(pi, w, 0, 0, current, out);
  return out;
}

Monomial amble_monomial(const Path& amble) {
  std::vector<Monomial::Factor> factors;
  for (std::size_t i = 0; i < amble.labels.size(); ++i)
    if (amble.vertices[i] == amble.vertices[i + 1])
      factors.emplace_back(Var{amble.labels[i], amble.vertices[i]}, 1);
  return Monomial(std::move(factors));
}

CountPoly f_pi_w(const Path& pi, const Word& w) {
  const std::size_t k = pi.length();
  // dp[t]: ambles of the prefix read so far that have crossed t edges of pi
  std::vector<CountPoly> dp(k + 1);
  dp[0] = CountPoly::monomial(Monomial{});
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    const char c = w[pos];
    std::vector<CountPoly> next(k + 1);
    for (std::size_t t = 0; t <= k; ++t) {
      if (dp[t].is_zero()) continue;
      next[t] += dp[t].times(Monomial::variable(Var{c, pi.vertices[t]}));
      if (t < k && pi.labels[t] == c) next[t + 1] += dp[t];
    }
    dp = std::move(next);
  }
  return dp[k];
}

std::uint64_t scattered_count(const Word& u, const Word& w) {
  std::vector<std::uint64_t> dp(u.size() + 1, 0);
  dp[0] = 1;
  for (char c : w)
    for (std::size_t t = u.size(); t > 0; --t)
      if (u[t - 1] == c) dp[t] += dp[t - 1];
  return dp[u.size()];
}

// ---------------------------------------------------------------- QAElem

QAElem QAElem::identity(int n, SemiringHandle s) {
  QAElem out(n, s);
  for (int v = 1; v <= n; ++v) out.add_term(Path::empty(v), FormalPoly::constant(s, s->one()));
  return out;
}

FormalPoly QAElem::coeff(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? FormalPoly(s_) : it->second;
}

void QAElem::add_term(const Path& p, const FormalPoly& c) {
  if (!same_semiring(s_, c.semiring())) throw CarrierMismatch("QAElem: coefficient semiring");
  if (p.vertices.empty() || p.source() < 1 || p.target() > n_ || !p.loop_free())
    throw Error("QAElem: " + to_string(p) + " is not a loop-free path for n=" + std::to_string(n_));
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void QAElem::require_same(const QAElem& other) const {
  if (n_ != other.n_) throw CarrierMismatch("quiver algebra elements with different n");
  if (!same_semiring(s_, other.s_)) throw CarrierMismatch("quiver algebra elements over different semirings");
}

QAElem QAElem::operator+(const QAElem& other) const {
  require_same(other);
  QAElem out = *this;
  for (const auto& [p, c] : other.terms_) out.add_term(p, c);
  return out;
}

QAElem QAElem::operator*(const QAElem& other) const {
  require_same(other);
  std::multimap<int, const std::pair<const Path, FormalPoly>*> by_source;
  for (const auto& t : other.terms_) by_source.emplace(t.first.source(), &t);
  QAElem out(n_, s_);
  for (const auto& [p, c] : terms_) {
    auto [lo, hi] = by_source.equal_range(p.target());
    for (auto it = lo; it != hi; ++it) out.add_term(p * it->second->first, c * it->second->second);
  }
  return out;
}

bool operator==(const QAElem& a, const QAElem& b) {
  return a.n_ == b.n_ && same_semiring(a.s_, b.s_) && a.terms_ == b.terms_;
}

std::map<Path, CountPoly> rho_counts(const Word& w, int n) {
  std::map<Path, CountPoly> out;
  for (const auto& p : enum_paths(n, w)) {
    auto f = f_pi_w(p, w);
    if (!f.is_zero()) out.emplace(p, std::move(f));
  }
  return out;
}

QAElem rho(const Word& w, int n, SemiringHandle s) {
  QAElem out(n, s);
  for (const auto& [p, f] : rho_counts(w, n)) out.add_term(p, FormalPoly::from_counts(s, f));
  return out;
}

QAElem lambda_reduce(const QAElem& p) {
  QAElem out(p.n(), p.semiring());
  for (const auto& [path, c] : p.terms()) out.add_term(path, delta(c, p.n()));
  return out;
}

QAElem lambda_reconstruct(const QAElem& q) {
  const int n = q.n();
  if (n < 2) throw NotInImage("lambda_reconstruct: lambda is not injective for n = 1");
  const auto& s = *q.semiring();
  auto head = q.terms().find(Path::empty(1));
  if (head == q.terms().end() || head->second.size() != 1)
    throw NotInImage("lambda_reconstruct: <1> coefficient is not a monomial");
  const auto& [word_mono, head_coeff] = *head->second.terms().begin();
  if (!s.is_one(head_coeff)) throw NotInImage("lambda_reconstruct: <1> coefficient is not monic");
  std::map<char, std::uint32_t> letters;
  for (const auto& [v, e] : word_mono.factors()) {
    if (v.vertex != 1) throw NotInImage("lambda_reconstruct: <1> coefficient has foreign variables");
    letters[v.letter] = e;
  }

  QAElem out(n, q.semiring());
  for (const auto& [path, c] : q.terms()) {
    std::map<char, std::uint32_t> used;
    for (char l : path.labels) ++used[l];
    for (const auto& [v, e] : used)
      if (letters[v] < e) throw NotInImage("lambda_reconstruct: path label exceeds letter counts");
    FormalPoly full(q.semiring());
    for (const auto& [m, coeff] : c.terms()) {
      std::vector<Monomial::Factor> factors = m.factors();
      for (const auto& [letter, total] : letters) {
        const std::uint32_t have = m.letter_degree(letter) + used[letter];
        if (have > total) throw NotInImage("lambda_reconstruct: term degree exceeds letter count");
        if (have == total) continue;
        if (path.target() != n)
          throw NotInImage("lambda_reconstruct: missing degree on a path avoiding vertex n");
        factors.emplace_back(Var{letter, n}, total - have);
      }
      for (const auto& [v, e] : m.factors()) {
        if (v.vertex == n) throw NotInImage("lambda_reconstruct: input contains sigma_n");
        if (!letters.contains(v.letter)) throw NotInImage("lambda_reconstruct: unknown letter");
      }
      full.add_term(Monomial(std::move(factors)), coeff);
    }
    out.add_term(path, full);
  }
  return out;
}

std::string to_string(const QAElem& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  for (const auto& [path, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (c.size() == 1 && c.semiring()->is_one(c.terms().begin()->second) &&
        c.terms().begin()->first.is_one()) {
      out += to_string(path);
      continue;
    }
    auto coeff = to_string(c);
    out += (c.size() > 1 ? "(" + coeff + ")" : coeff) + " " + to_string(path);
  }
  return out;
}

std::string to_json(const QAElem& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [path, c] : p.terms())
    arr.push_back({{"path", {{"vertices", path.vertices}, {"labels", path.labels}}},
                   {"coeff", to_string(c)}});
  return arr.dump();
}

}  // namespace utvar
