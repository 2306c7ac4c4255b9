#include "covpack/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covpack {
namespace {

// Normalized entries may land a hair below 1 after floating division; values
// this close are snapped up instead of rejected.
constexpr double kNormalizedBoundaryTol = 1e-12;

void validate_entry(const Entry& e, Index n_rows, Index n_cols) {
  if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
    throw std::invalid_argument("entry index out of range");
  }
  if (!std::isfinite(e.value)) {
    throw std::invalid_argument("entry value must be finite");
  }
  if (e.value < 0.0) {
    throw std::invalid_argument("negative entry");
  }
  if (e.value == 0.0) {
    throw std::invalid_argument("zero entry (zeros are absent, not stored)");
  }
}

}  // namespace

SparseNonNegMatrix::SparseNonNegMatrix(Index n_rows, Index n_cols,
                                       std::vector<Entry> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  if (n_rows_ < 0 || n_cols_ < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
  for (const Entry& e : entries_) validate_entry(e, n_rows_, n_cols_);
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t t = 1; t < entries_.size(); ++t) {
    if (entries_[t].row == entries_[t - 1].row && entries_[t].col == entries_[t - 1].col) {
      throw std::invalid_argument("duplicate entry");
    }
  }

  row_start_.assign(static_cast<std::size_t>(n_rows_) + 1, 0);
  col_start_.assign(static_cast<std::size_t>(n_cols_) + 1, 0);
  for (const Entry& e : entries_) {
    ++row_start_[e.row + 1];
    ++col_start_[e.col + 1];
  }
  for (Index i = 0; i < n_rows_; ++i) row_start_[i + 1] += row_start_[i];
  for (Index j = 0; j < n_cols_; ++j) col_start_[j + 1] += col_start_[j];

  row_inc_.resize(entries_.size());
  col_inc_.resize(entries_.size());
  std::vector<Index> row_cursor(row_start_.begin(), row_start_.end() - 1);
  std::vector<Index> col_cursor(col_start_.begin(), col_start_.end() - 1);
  // Entries are (row, col)-sorted, so rows ascend within each column and
  // columns ascend within each row.
  for (const Entry& e : entries_) {
    row_inc_[row_cursor[e.row]++] = Incidence{e.col, e.value};
    col_inc_[col_cursor[e.col]++] = Incidence{e.row, e.value};
  }
}

Eigen::VectorXd row_products(const SparseNonNegMatrix& a, const Eigen::VectorXd& per_col) {
  if (per_col.size() != a.cols()) {
    throw std::invalid_argument("row_products: dimension mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (const Incidence& inc : a.row(i)) sum += inc.value * per_col[inc.index];
    out[i] = sum;
  }
  return out;
}

Eigen::VectorXd col_products(const SparseNonNegMatrix& a, const Eigen::VectorXd& per_row) {
  if (per_row.size() != a.rows()) {
    throw std::invalid_argument("col_products: dimension mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    double sum = 0.0;
    for (const Incidence& inc : a.col(j)) sum += inc.value * per_row[inc.index];
    out[j] = sum;
  }
  return out;
}

InstanceStats compute_stats(const SparseNonNegMatrix& matrix) {
  InstanceStats stats;
  for (Index j = 0; j < matrix.cols(); ++j) {
    double sum = 0.0;
    for (const Incidence& inc : matrix.col(j)) sum += inc.value;
    stats.gamma_p = std::max(stats.gamma_p, sum);
  }
  for (Index i = 0; i < matrix.rows(); ++i) {
    double sum = 0.0;
    for (const Incidence& inc : matrix.row(i)) sum += inc.value;
    stats.gamma_d = std::max(stats.gamma_d, sum);
  }
  if (matrix.nnz() > 0) {
    double mx = 0.0;
    for (const Entry& e : matrix.entries()) mx = std::max(mx, e.value);
    stats.a_max = mx;
  }
  return stats;
}

NormalizedInstance::NormalizedInstance(SparseNonNegMatrix matrix)
    : matrix_(std::move(matrix)) {
  bool snap = false;
  for (const Entry& e : matrix_.entries()) {
    if (e.value < 1.0 - kNormalizedBoundaryTol) {
      throw std::invalid_argument("normalized instance requires every entry >= 1");
    }
    if (e.value < 1.0) snap = true;
  }
  if (snap) {
    std::vector<Entry> snapped = matrix_.entries();
    for (Entry& e : snapped) {
      if (e.value < 1.0) e.value = 1.0;
    }
    matrix_ = SparseNonNegMatrix(matrix_.rows(), matrix_.cols(), std::move(snapped));
  }
  for (Index i = 0; i < matrix_.rows(); ++i) {
    if (matrix_.row(i).empty()) {
      throw std::invalid_argument("infeasible covering instance: row " +
                                  std::to_string(i) + " has no entries");
    }
  }
  stats_ = compute_stats(matrix_);
}

double gamma_p(const NormalizedInstance& inst) { return inst.stats().gamma_p; }
double gamma_d(const NormalizedInstance& inst) { return inst.stats().gamma_d; }
double a_max(const NormalizedInstance& inst) { return inst.stats().a_max; }

GeneralInstance::GeneralInstance(SparseNonNegMatrix m, Eigen::VectorXd b_in,
                                 Eigen::VectorXd c_in)
    : matrix(std::move(m)), b(std::move(b_in)), c(std::move(c_in)) {
  if (b.size() != matrix.rows()) {
    throw std::invalid_argument("b length must match the row count");
  }
  if (c.size() != matrix.cols()) {
    throw std::invalid_argument("c length must match the column count");
  }
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i]) || b[i] < 0.0) {
      throw std::invalid_argument("b values must be finite and non-negative");
    }
  }
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (!std::isfinite(c[j]) || c[j] < 0.0) {
      throw std::invalid_argument("c values must be finite and non-negative");
    }
  }
}

bool operator==(const GeneralInstance& a, const GeneralInstance& b) {
  if (!(a.matrix == b.matrix)) return false;
  if (a.b.size() != b.b.size() || a.c.size() != b.c.size()) return false;
  for (Eigen::Index i = 0; i < a.b.size(); ++i) {
    if (a.b[i] != b.b[i]) return false;
  }
  for (Eigen::Index j = 0; j < a.c.size(); ++j) {
    if (a.c[j] != b.c[j]) return false;
  }
  return true;
}

}  // namespace covpack
