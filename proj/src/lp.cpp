#include "crq/lp.hpp"

#include <cstddef>
#include <stdexcept>

namespace crq {

namespace {

// Dense simplex tableau over exact rationals. Columns 0..n-1 are structural;
// phase 1 appends one artificial column per row.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b)
      : rows_(a.size()), cols_(a.empty() ? 0 : a[0].size()) {
    tab_.resize(rows_);
    rhs_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (a[r].size() != cols_) throw std::invalid_argument("ragged LP matrix");
      tab_[r] = a[r];
      rhs_[r] = b[r];
      if (rhs_[r] < 0) {
        rhs_[r] = -rhs_[r];
        for (auto& v : tab_[r]) v = -v;
      }
    }
  }

  // Runs phase 1. Returns false when the system is infeasible.
  bool phase1() {
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      basis_[r] = cols_ + r;
      for (std::size_t rr = 0; rr < rows_; ++rr) {
        tab_[rr].push_back(rr == r ? Rat(1) : Rat(0));
      }
    }
    std::vector<Rat> cost(cols_ + rows_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r) cost[cols_ + r] = Rat(-1);
    run(cost, cols_ + rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] >= cols_ && rhs_[r] != 0) return false;
    }
    drop_artificials();
    return true;
  }

  // Phase 2 over the structural columns; requires phase1() == true.
  LpStatus phase2(const std::vector<Rat>& cost) {
    return run(cost, cols_);
  }

  Rat objective(const std::vector<Rat>& cost) const {
    Rat v(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) v += cost[basis_[r]] * rhs_[r];
    }
    return v;
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) x[basis_[r]] = rhs_[r];
    }
    return x;
  }

 private:
  // Bland's rule on both the entering and the leaving variable, which rules
  // out cycling.
  LpStatus run(const std::vector<Rat>& cost, std::size_t usable_cols) {
    for (;;) {
      std::size_t enter = usable_cols;
      for (std::size_t j = 0; j < usable_cols; ++j) {
        if (is_basic(j)) continue;
        Rat reduced = j < cost.size() ? cost[j] : Rat(0);
        for (std::size_t r = 0; r < rows_; ++r) {
          const std::size_t bj = basis_[r];
          if (bj < cost.size() && cost[bj] != 0 && tab_[r][j] != 0) {
            reduced -= cost[bj] * tab_[r][j];
          }
        }
        if (reduced > 0) {
          enter = j;
          break;
        }
      }
      if (enter == usable_cols) return LpStatus::Optimal;

      std::size_t leave = rows_;
      Rat best_ratio(0);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rat ratio = rhs_[r] / tab_[r][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t col) const {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] == col) return true;
    }
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rat inv = Rat(1) / tab_[row][col];
    for (auto& v : tab_[row]) v *= inv;
    rhs_[row] *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || tab_[r][col] == 0) continue;
      const Rat factor = tab_[r][col];
      for (std::size_t j = 0; j < tab_[r].size(); ++j) {
        if (tab_[row][j] != 0) tab_[r][j] -= factor * tab_[row][j];
      }
      rhs_[r] -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  // Pivots zero-level artificials out of the basis; rows that cannot be
  // pivoted are redundant and get deleted.
  void drop_artificials() {
    for (std::size_t r = 0; r < rows_;) {
      if (basis_[r] < cols_) {
        ++r;
        continue;
      }
      std::size_t col = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (tab_[r][j] != 0 && !is_basic(j)) {
          col = j;
          break;
        }
      }
      if (col < cols_) {
        pivot(r, col);
        ++r;
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
      }
    }
    for (auto& row : tab_) row.resize(cols_);
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                     const std::vector<Rat>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("LP row count mismatch");
  LpResult result;
  Tableau tableau(a, b);
  if (!tableau.phase1()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  result.status = tableau.phase2(c);
  if (result.status == LpStatus::Optimal) {
    result.objective = tableau.objective(c);
    result.solution = tableau.solution();
  }
  return result;
}

std::optional<std::vector<Rat>> lp_feasible_point(const std::vector<std::vector<Rat>>& a,
                                                  const std::vector<Rat>& b) {
  Tableau tableau(a, b);
  if (!tableau.phase1()) return std::nullopt;
  return tableau.solution();
}

}  // namespace crq
