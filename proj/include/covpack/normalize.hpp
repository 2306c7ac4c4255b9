#pragma once

#include <vector>

#include <Eigen/Core>

#include "covpack/instance.hpp"

namespace covpack {

// Record of the general -> normal form reduction, sufficient to map
// normalized solutions back onto the original variables.
struct NormalizationMap {
  std::vector<Index> removed_rows;                   // b_i = 0
  std::vector<Index> forced_columns;                 // c_j = 0, x_j saturated
  std::vector<Index> rows_deleted_by_forced_columns;
  std::vector<Index> surviving_rows;                 // old indices, ascending
  std::vector<Index> surviving_columns;              // old indices, ascending
  double scale_min = 1.0;  // min of A_ij / (b_i c_j) over surviving entries
  Eigen::VectorXd b;       // original right-hand side
  Eigen::VectorXd c;       // original costs
};

struct NormalizeResult {
  NormalizedInstance instance;
  NormalizationMap map;
};

// Three-step reduction: drop rows with b_i = 0; saturate columns with
// c_j = 0 and drop every row they already cover; rescale the surviving
// entries A_ij / (b_i c_j) so the smallest becomes exactly 1. Throws if a
// surviving row is left with no entries (its covering constraint would be
// unsatisfiable). Removing every row yields an empty instance, not an error.
NormalizeResult normalize(const GeneralInstance& general);

// Inverse variable scaling, applied in reverse reduction order:
// x_j = x~_j / (c_j * scale_min) and y_i = y~_i / (b_i * scale_min) for
// survivors; removed rows get y = 0; forced columns are reported through
// saturated_columns rather than a numeric value. Objectives are recomputed
// against the original b and c.
PrimalDualSolution denormalize(const PrimalDualSolution& normalized_solution,
                               const NormalizationMap& map);

}  // namespace covpack
