#include "utvar/lp.hpp"

#include <stdexcept>

namespace utvar::lp {

namespace {

// Tableau in canonical form with respect to `basis`: rows hold B^-1 A | B^-1 b.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols), enabled_(cols, true) {}

  void disable(std::size_t col) { enabled_[col] = false; }
  std::size_t cols() const { return cols_; }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Rational& rhs(std::size_t r) const { return rows_[r][cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(rows_[r][j]) != 0) rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Maximizes cost . x over the current feasible basis. Returns false when
  // unbounded.
  bool optimize(const std::vector<Rational>& cost) {
    for (;;) {
      // Bland: lowest-index entering column with positive reduced cost
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
        if (!enabled_[j] || is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i)
          if (sgn(rows_[i][j]) != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        if (sgn(reduced) > 0) enter = j;
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  Rational value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) v += cost[basis_[i]] * rows_[i][cols_];
    return v;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][cols_];
    return x;
  }

 private:
  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::vector<bool> enabled_;
};

}  // namespace

Result maximize(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  auto is_free = [&](std::size_t j) { return !problem.free_vars.empty() && problem.free_vars[j]; };

  // structural columns: x_j, or x_j^+ and x_j^- for free variables
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = structural++;
    if (is_free(j)) neg_col[j] = structural++;
  }

  const std::size_t m = problem.rows.size();
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  std::vector<Relation> rel(m);
  std::vector<bool> negate(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    if (row.coeffs.size() != n) throw std::invalid_argument("lp: row width mismatch");
    negate[i] = sgn(row.rhs) < 0;
    rel[i] = row.relation;
    if (negate[i] && rel[i] != Relation::Equal)
      rel[i] = rel[i] == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel[i] != Relation::Equal) ++slacks;
    if (rel[i] != Relation::LessEqual) ++artificials;
  }

  const std::size_t slack0 = structural;
  const std::size_t art0 = slack0 + slacks;
  const std::size_t cols = art0 + artificials;

  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  std::size_t next_slack = slack0;
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    const int sign = negate[i] ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row.coeffs[j]) == 0) continue;
      rows[i][pos_col[j]] = sign * row.coeffs[j];
      if (is_free(j)) rows[i][neg_col[j]] = -sign * row.coeffs[j];
    }
    rows[i][cols] = sign * row.rhs;
    if (rel[i] == Relation::LessEqual) {
      rows[i][next_slack] = 1;
      basis[i] = next_slack++;
    } else {
      if (rel[i] == Relation::GreaterEqual) rows[i][next_slack++] = -1;
      rows[i][next_art] = 1;
      basis[i] = next_art++;
    }
  }

  Tableau t(std::move(rows), std::move(basis), cols);
  Result result;

  if (artificials > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    t.optimize(phase1);
    if (sgn(t.value(phase1)) < 0) {
      result.status = Status::Infeasible;
      return result;
    }
    // drive zero-valued artificials out of the basis
    for (std::size_t i = 0; i < t.num_rows();) {
      if (t.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (sgn(t.at(i, j)) != 0) {
          col = j;
          break;
        }
      }
      if (col == art0) {
        t.erase_row(i);  // redundant equality
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = art0; j < cols; ++j) t.disable(j);
  }

  std::vector<Rational> cost(cols);
  for (std::size_t j = 0; j < n && j < problem.objective.size(); ++j) {
    cost[pos_col[j]] = problem.objective[j];
    if (is_free(j)) cost[neg_col[j]] = -problem.objective[j];
  }
  if (!t.optimize(cost)) {
    result.status = Status::Unbounded;
    return result;
  }
  auto raw = t.solution();
  result.status = Status::Optimal;
  result.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = raw[pos_col[j]];
    if (is_free(j)) result.x[j] -= raw[neg_col[j]];
  }
  result.value = t.value(cost);
  return result;
}

}  // namespace utvar::lp
