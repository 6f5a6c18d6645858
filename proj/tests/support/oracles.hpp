#pragma once

// Brute-force reference implementations used to cross-check the library.
// Nothing here calls the quiver, funceq or variety code paths it validates.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "utvar/poly.hpp"

namespace oracle {

using utvar::Elem;
using utvar::ExtRational;
using utvar::Rational;

struct RawPath {
  std::vector<int> vertices;
  std::string labels;
  friend auto operator<=>(const RawPath&, const RawPath&) = default;
};

// Every strictly increasing vertex subset, every labelling.
inline std::vector<RawPath> all_paths(int n, const std::string& sigma) {
  std::vector<RawPath> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) vs.push_back(v + 1);
    const std::size_t edges = vs.size() - 1;
    std::size_t combos = 1;
    for (std::size_t e = 0; e < edges; ++e) combos *= sigma.size();
    for (std::size_t c = 0; c < combos; ++c) {
      std::string labels;
      std::size_t x = c;
      for (std::size_t e = 0; e < edges; ++e) {
        labels += sigma[x % sigma.size()];
        x /= sigma.size();
      }
      out.push_back({vs, labels});
    }
  }
  return out;
}

// Monomials (as sorted (letter, vertex) multisets) of all vertex sequences
// labelled w from source to target whose non-loop steps spell pi.
inline std::map<std::multiset<std::pair<int, char>>, std::uint64_t> amble_monomials(
    const std::vector<int>& vertices, const std::string& labels, const std::string& w) {
  std::map<std::multiset<std::pair<int, char>>, std::uint64_t> out;
  const int lo = vertices.front();
  const int hi = vertices.back();
  std::vector<int> seq(w.size() + 1, lo);
  // odometer over nondecreasing sequences in [lo, hi] with fixed endpoints
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == w.size() + 1) {
      if (seq.back() != hi) return;
      std::vector<int> visited{seq[0]};
      std::string spelled;
      std::multiset<std::pair<int, char>> mono;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (seq[i + 1] == seq[i]) {
          mono.insert({seq[i], w[i]});
        } else {
          visited.push_back(seq[i + 1]);
          spelled += w[i];
        }
      }
      if (visited == vertices && spelled == labels) ++out[mono];
      return;
    }
    for (int v = seq[pos - 1]; v <= hi; ++v) {
      seq[pos] = v;
      rec(pos + 1);
    }
  };
  if (w.empty()) {
    if (lo == hi) out[{}] = 1;
    return out;
  }
  rec(1);
  return out;
}

inline std::multiset<std::pair<int, char>> as_multiset(const utvar::Monomial& m) {
  std::multiset<std::pair<int, char>> out;
  for (const auto& [v, e] : m.factors())
    for (std::uint32_t k = 0; k < e; ++k) out.insert({v.vertex, v.letter});
  return out;
}

// Bicyclic product by rewriting pq -> empty on q^i p^j q^k p^l.
inline std::pair<std::uint64_t, std::uint64_t> bicyclic_rewrite(std::uint64_t i, std::uint64_t j,
                                                                 std::uint64_t k, std::uint64_t l) {
  std::string w = std::string(i, 'q') + std::string(j, 'p') + std::string(k, 'q') + std::string(l, 'p');
  for (auto pos = w.find("pq"); pos != std::string::npos; pos = w.find("pq")) w.erase(pos, 2);
  const auto qs = static_cast<std::uint64_t>(std::count(w.begin(), w.end(), 'q'));
  const auto ps = static_cast<std::uint64_t>(std::count(w.begin(), w.end(), 'p'));
  return {qs, ps};
}

// Naive max-plus value of a tropical polynomial.
inline ExtRational tropical_value(const utvar::FormalPoly& p, const std::map<utvar::Var, ExtRational>& x) {
  ExtRational best = ExtRational::neg_inf();
  for (const auto& [m, c] : p.terms()) {
    ExtRational term = std::get<utvar::TropicalVal>(c).x;
    for (const auto& [v, e] : m.factors()) {
      const auto& xv = x.at(v);
      if (xv.is_neg_inf() || term.is_neg_inf()) {
        term = ExtRational::neg_inf();
        break;
      }
      term = ExtRational(Rational(term.value() + Rational(e) * xv.value()));
    }
    if (term > best) best = term;
  }
  return best;
}

// Plain n x n matrices over a semiring given by its element list.
struct Mat {
  std::vector<Elem> a;
  friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat mat_mul(const utvar::Semiring& s, int n, const Mat& x, const Mat& y) {
  Mat out{std::vector<Elem>(static_cast<std::size_t>(n) * n, s.zero())};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = s.zero();
      for (int k = 0; k < n; ++k) acc = s.add(acc, s.mul(x.a[i * n + k], y.a[k * n + j]));
      out.a[i * n + j] = acc;
    }
  return out;
}

// All upper triangular n x n matrices over a finite carrier.
inline std::vector<Mat> all_upper(const utvar::Semiring& s, int n) {
  const auto elems = *s.elements();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) cells.emplace_back(i, j);
  std::vector<Mat> out;
  std::vector<std::size_t> digits(cells.size(), 0);
  while (true) {
    Mat m{std::vector<Elem>(static_cast<std::size_t>(n) * n, s.zero())};
    for (std::size_t c = 0; c < cells.size(); ++c) m.a[cells[c].first * n + cells[c].second] = elems[digits[c]];
    out.push_back(std::move(m));
    std::size_t d = cells.size();
    while (d > 0) {
      if (++digits[d - 1] < elems.size()) break;
      digits[d - 1] = 0;
      --d;
    }
    if (d == 0) break;
  }
  return out;
}

// Number of distinct unary term functions X -> X^m on UT_n(S), m = 0..max_m.
inline std::size_t distinct_power_functions(const utvar::Semiring& s, int n, int max_m) {
  const auto mats = all_upper(s, n);
  Mat id{std::vector<Elem>(static_cast<std::size_t>(n) * n, s.zero())};
  for (int i = 0; i < n; ++i) id.a[i * n + i] = s.one();
  std::vector<Mat> cur(mats.size(), id);
  // signatures as formatted strings (Elem has no ordering)
  std::set<std::string> sigs;
  for (int m = 0; m <= max_m; ++m) {
    std::string sig;
    for (const auto& x : cur)
      for (const auto& e : x.a) sig += s.format(e) + ",";
    sigs.insert(sig);
    for (std::size_t k = 0; k < mats.size(); ++k) cur[k] = mat_mul(s, n, cur[k], mats[k]);
  }
  return sigs.size();
}

// All words over sigma with length in [lo, hi], shortlex.
inline std::vector<std::string> words(const std::string& sigma, std::size_t lo, std::size_t hi) {
  std::vector<std::string> out;
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= hi; ++len) {
    if (len >= lo) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : sigma) next.push_back(w + c);
    layer = std::move(next);
  }
  return out;
}

inline std::uint64_t scattered_brute(const std::string& u, const std::string& w) {
  // subsets of positions of w of size |u| spelling u
  if (u.size() > w.size()) return 0;
  std::uint64_t count = 0;
  std::vector<bool> pick(w.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(u.size()), true);
  do {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (pick[i]) s += w[i];
    count += s == u;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return count;
}

}  // namespace oracle
