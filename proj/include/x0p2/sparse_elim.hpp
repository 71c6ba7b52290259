#pragma once

#include <optional>
#include <vector>

#include "x0p2/rational.hpp"

namespace x0p2 {

struct SparseEntry {
  int row = 0;
  int col = 0;
  Rational value;
};

// Exact sparse Gaussian elimination with min-fill pivoting, for the fiber
// intersection systems whose dimension reaches ~22000 near p = 500. Chain
// components give rows with at most three entries, so greedy minimum-nnz
// pivoting keeps the elimination near-linear; the handful of principal rows
// densify only against each other at the end. Duplicate triplets accumulate.

int sparse_rank(int n_rows, int n_cols, const std::vector<SparseEntry>& entries);

// Particular exact solution of M x = b with free variables set to zero, or
// nullopt when the system is inconsistent. Throws std::invalid_argument when
// b's length differs from n_rows.
std::optional<std::vector<Rational>> sparse_solve(
    int n_rows, int n_cols, const std::vector<SparseEntry>& entries,
    const std::vector<Rational>& b);

}  // namespace x0p2
