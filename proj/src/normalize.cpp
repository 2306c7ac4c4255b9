#include "covpack/normalize.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace covpack {

NormalizeResult normalize(const GeneralInstance& general) {
  const SparseNonNegMatrix& a = general.matrix;
  const Index n = a.rows();
  const Index m = a.cols();

  NormalizationMap map;
  map.b = general.b;
  map.c = general.c;

  // Step 1: rows with b_i = 0 are satisfied by y_i = 0 and dropped.
  std::vector<char> row_gone(n, 0);
  for (Index i = 0; i < n; ++i) {
    if (general.b[i] == 0.0) {
      row_gone[i] = 1;
      map.removed_rows.push_back(i);
    }
  }

  // Step 2: columns with c_j = 0 are saturated; every row they touch is
  // already covered and dropped as well.
  std::vector<char> col_gone(m, 0);
  for (Index j = 0; j < m; ++j) {
    if (general.c[j] == 0.0) {
      col_gone[j] = 1;
      map.forced_columns.push_back(j);
    }
  }
  for (const Entry& e : a.entries()) {
    if (col_gone[e.col] && !row_gone[e.row]) {
      row_gone[e.row] = 2;  // deleted by a forced column, not by b = 0
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (row_gone[i] == 2) map.rows_deleted_by_forced_columns.push_back(i);
  }

  std::vector<Index> new_row(n, -1);
  std::vector<Index> new_col(m, -1);
  for (Index i = 0; i < n; ++i) {
    if (!row_gone[i]) {
      new_row[i] = static_cast<Index>(map.surviving_rows.size());
      map.surviving_rows.push_back(i);
    }
  }
  for (Index j = 0; j < m; ++j) {
    if (!col_gone[j]) {
      new_col[j] = static_cast<Index>(map.surviving_columns.size());
      map.surviving_columns.push_back(j);
    }
  }

  // Step 3: rescale the surviving entries A_ij / (b_i c_j) so the smallest
  // maps to exactly 1 (x/x == 1 in IEEE arithmetic).
  std::vector<Entry> scaled;
  double scale_min = std::numeric_limits<double>::infinity();
  for (const Entry& e : a.entries()) {
    if (row_gone[e.row] || col_gone[e.col]) continue;
    const double hat = e.value / (general.b[e.row] * general.c[e.col]);
    scale_min = std::min(scale_min, hat);
    scaled.push_back(Entry{new_row[e.row], new_col[e.col], hat});
  }
  map.scale_min = scaled.empty() ? 1.0 : scale_min;
  for (Entry& e : scaled) e.value = e.value / map.scale_min;

  const Index n_surv = static_cast<Index>(map.surviving_rows.size());
  const Index m_surv = static_cast<Index>(map.surviving_columns.size());
  std::vector<Index> row_fill(n_surv, 0);
  for (const Entry& e : scaled) ++row_fill[e.row];
  for (Index i = 0; i < n_surv; ++i) {
    if (row_fill[i] == 0) {
      throw std::invalid_argument(
          "infeasible covering instance: row " + std::to_string(map.surviving_rows[i]) +
          " has b > 0 but no surviving entries");
    }
  }

  NormalizedInstance inst(SparseNonNegMatrix(n_surv, m_surv, std::move(scaled)));
  return NormalizeResult{std::move(inst), std::move(map)};
}

PrimalDualSolution denormalize(const PrimalDualSolution& normalized_solution,
                               const NormalizationMap& map) {
  const Index n_surv = static_cast<Index>(map.surviving_rows.size());
  const Index m_surv = static_cast<Index>(map.surviving_columns.size());
  if (normalized_solution.x.size() != m_surv || normalized_solution.y.size() != n_surv) {
    throw std::invalid_argument("denormalize: solution dimensions do not match the map");
  }

  PrimalDualSolution out;
  out.x = Eigen::VectorXd::Zero(map.c.size());
  out.y = Eigen::VectorXd::Zero(map.b.size());
  for (Index t = 0; t < m_surv; ++t) {
    const Index j = map.surviving_columns[t];
    out.x[j] = normalized_solution.x[t] / (map.c[j] * map.scale_min);
  }
  for (Index t = 0; t < n_surv; ++t) {
    const Index i = map.surviving_rows[t];
    out.y[i] = normalized_solution.y[t] / (map.b[i] * map.scale_min);
  }
  out.saturated_columns = map.forced_columns;

  double primal = 0.0;
  for (Eigen::Index j = 0; j < map.c.size(); ++j) primal += map.c[j] * out.x[j];
  double dual = 0.0;
  for (Eigen::Index i = 0; i < map.b.size(); ++i) dual += map.b[i] * out.y[i];
  out.primal_objective = primal;
  out.dual_objective = dual;
  return out;
}

}  // namespace covpack
