#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace covpack {

using Index = std::int32_t;

// One stored coefficient A(row, col) of the constraint matrix. Zeros are
// never stored; a missing entry means A(row, col) = 0.
struct Entry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Neighbor reference in an adjacency view: the opposite-side index plus the
// coefficient shared by both endpoints.
struct Incidence {
  Index index = 0;
  double value = 0.0;
};

// Sparse non-negative matrix in entry form with row-major and column-major
// adjacency indexes. Rows are elements (dual variables), columns are sets
// (primal variables). Stored values are strictly positive and (row, col)
// pairs are unique; both are enforced at construction.
class SparseNonNegMatrix {
 public:
  SparseNonNegMatrix() = default;
  SparseNonNegMatrix(Index n_rows, Index n_cols, std::vector<Entry> entries);

  Index rows() const { return n_rows_; }
  Index cols() const { return n_cols_; }
  Index nnz() const { return static_cast<Index>(entries_.size()); }

  // Entries sorted by (row, col).
  const std::vector<Entry>& entries() const { return entries_; }

  // Incidences of row i, ascending column index.
  std::span<const Incidence> row(Index i) const {
    return {row_inc_.data() + row_start_[i],
            row_inc_.data() + row_start_[i + 1]};
  }
  // Incidences of column j, ascending row index.
  std::span<const Incidence> col(Index j) const {
    return {col_inc_.data() + col_start_[j],
            col_inc_.data() + col_start_[j + 1]};
  }

  friend bool operator==(const SparseNonNegMatrix& a, const SparseNonNegMatrix& b) {
    return a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ && a.entries_ == b.entries_;
  }

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<Entry> entries_;
  std::vector<Index> row_start_ = {0};
  std::vector<Incidence> row_inc_;
  std::vector<Index> col_start_ = {0};
  std::vector<Incidence> col_inc_;
};

// A * x accumulated per row, ascending column order within each row.
Eigen::VectorXd row_products(const SparseNonNegMatrix& a, const Eigen::VectorXd& per_col);
// A^T * y accumulated per column, ascending row order within each column.
Eigen::VectorXd col_products(const SparseNonNegMatrix& a, const Eigen::VectorXd& per_row);

// Width/sparsity statistics of a matrix in normal form.
struct InstanceStats {
  double gamma_p = 0.0;  // max column sum
  double gamma_d = 0.0;  // max row sum
  double a_max = 1.0;    // largest entry; 1 for an entry-free matrix

  friend bool operator==(const InstanceStats&, const InstanceStats&) = default;
};

InstanceStats compute_stats(const SparseNonNegMatrix& matrix);

// Covering/packing instance in normal form: unit costs and demands, every
// stored entry >= 1, every row covered by at least one column. Construction
// rejects matrices violating either requirement; values within 1e-12 below 1
// are snapped up to exactly 1 so the minimum-entry invariant is exact.
class NormalizedInstance {
 public:
  explicit NormalizedInstance(SparseNonNegMatrix matrix);

  const SparseNonNegMatrix& matrix() const { return matrix_; }
  const InstanceStats& stats() const { return stats_; }
  Index elements() const { return matrix_.rows(); }
  Index sets() const { return matrix_.cols(); }

  friend bool operator==(const NormalizedInstance& a, const NormalizedInstance& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  SparseNonNegMatrix matrix_;
  InstanceStats stats_;
};

double gamma_p(const NormalizedInstance& inst);
double gamma_d(const NormalizedInstance& inst);
double a_max(const NormalizedInstance& inst);

// General-form pair: min c^T x s.t. Ax >= b and max b^T y s.t. A^T y <= c,
// all data non-negative. Reduced to a NormalizedInstance by normalize().
struct GeneralInstance {
  SparseNonNegMatrix matrix;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  GeneralInstance(SparseNonNegMatrix m, Eigen::VectorXd b_in, Eigen::VectorXd c_in);

  friend bool operator==(const GeneralInstance& a, const GeneralInstance& b);
};

// Primal/dual pair produced by the solvers (normal form) or by denormalize()
// (original variables). saturated_columns lists variables the reduction fixed
// at +infinity (zero-cost columns); their x slot is 0 and they contribute
// nothing to the objective.
struct PrimalDualSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<Index> saturated_columns;
};

}  // namespace covpack
