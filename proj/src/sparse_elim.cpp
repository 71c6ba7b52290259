#include "x0p2/sparse_elim.hpp"

#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

namespace x0p2 {

namespace {

class Eliminator {
 public:
  Eliminator(int n_rows, int n_cols, const std::vector<SparseEntry>& entries,
             std::vector<Rational> rhs)
      : n_rows_(n_rows),
        n_cols_(n_cols),
        rows_(n_rows),
        rhs_(std::move(rhs)),
        col_rows_(n_cols),
        active_(n_rows, true) {
    if (rhs_.empty()) rhs_.assign(n_rows, Rational(0));
    for (const SparseEntry& e : entries) {
      if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
        throw std::invalid_argument("sparse system: entry out of range");
      Rational& slot = rows_[e.row][e.col];
      slot += e.value;
      if (slot.is_zero()) rows_[e.row].erase(e.col);
    }
    for (int r = 0; r < n_rows; ++r)
      for (const auto& [c, v] : rows_[r]) col_rows_[c].insert(r);
  }

  void run() {
    // Lazy min-heap of (nnz, row); stale sizes are re-pushed on pop.
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (int r = 0; r < n_rows_; ++r)
      heap.emplace(static_cast<int>(rows_[r].size()), r);
    while (!heap.empty()) {
      auto [nnz, r] = heap.top();
      heap.pop();
      if (!active_[r]) continue;
      const int cur = static_cast<int>(rows_[r].size());
      if (cur != nnz) {
        heap.emplace(cur, r);
        continue;
      }
      if (cur == 0) {
        active_[r] = false;
        continue;
      }
      // Pivot column: fewest active rows, ties to the lowest index.
      int pc = -1;
      size_t best = 0;
      for (const auto& [c, v] : rows_[r]) {
        const size_t uses = col_rows_[c].size();
        if (pc < 0 || uses < best) {
          pc = c;
          best = uses;
        }
      }
      eliminate(r, pc, heap);
    }
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  bool consistent() const {
    for (int r = 0; r < n_rows_; ++r)
      if (!is_pivot_row_[r] && rows_[r].empty() && !rhs_[r].is_zero())
        return false;
    return true;
  }

  std::vector<Rational> back_substitute() const {
    std::vector<Rational> x(n_cols_, Rational(0));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto [r, c] = *it;
      Rational s = rhs_[r];
      for (const auto& [j, v] : rows_[r])
        if (j != c) s -= v * x[j];
      x[c] = s / rows_[r].at(c);
    }
    return x;
  }

 private:
  template <class Heap>
  void eliminate(int r, int pc, Heap& heap) {
    const Rational piv = rows_[r].at(pc);
    const std::set<int> users = col_rows_[pc];
    for (int r2 : users) {
      if (r2 == r) continue;
      const Rational f = rows_[r2].at(pc) / piv;
      for (const auto& [j, v] : rows_[r]) {
        if (j == pc) {
          rows_[r2].erase(j);
          col_rows_[j].erase(r2);
          continue;
        }
        auto it = rows_[r2].find(j);
        if (it == rows_[r2].end()) {
          Rational nv = -(f * v);
          if (!nv.is_zero()) {
            rows_[r2].emplace(j, std::move(nv));
            col_rows_[j].insert(r2);
          }
        } else {
          it->second -= f * v;
          if (it->second.is_zero()) {
            rows_[r2].erase(it);
            col_rows_[j].erase(r2);
          }
        }
      }
      rhs_[r2] -= f * rhs_[r];
      heap.emplace(static_cast<int>(rows_[r2].size()), r2);
    }
    // Retire the pivot row; it keeps its entries for back-substitution.
    for (const auto& [j, v] : rows_[r]) col_rows_[j].erase(r);
    active_[r] = false;
    is_pivot_row_[r] = true;
    pivots_.emplace_back(r, pc);
  }

  int n_rows_;
  int n_cols_;
  std::vector<std::map<int, Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::set<int>> col_rows_;
  std::vector<bool> active_;
  std::vector<bool> is_pivot_row_ = std::vector<bool>(n_rows_, false);
  std::vector<std::pair<int, int>> pivots_;
};

}  // namespace

int sparse_rank(int n_rows, int n_cols, const std::vector<SparseEntry>& entries) {
  Eliminator e(n_rows, n_cols, entries, {});
  e.run();
  return e.rank();
}

std::optional<std::vector<Rational>> sparse_solve(
    int n_rows, int n_cols, const std::vector<SparseEntry>& entries,
    const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != n_rows)
    throw std::invalid_argument("sparse_solve: dimension mismatch");
  Eliminator e(n_rows, n_cols, entries, b);
  e.run();
  if (!e.consistent()) return std::nullopt;
  return e.back_substitute();
}

}  // namespace x0p2
