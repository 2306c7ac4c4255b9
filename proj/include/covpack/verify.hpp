#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include <json.hpp>

#include "covpack/engine.hpp"
#include "covpack/instance.hpp"

namespace covpack {

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kRatioTol = 1e-9;  // relative

struct FeasibilityResult {
  bool feasible = false;
  double worst_slack = 0.0;
};

// Primal: every row satisfies sum_S A_eS x_S >= 1 - tol and x >= 0.
// worst_slack is the minimum of (row sum - 1) over rows.
FeasibilityResult check_primal(const NormalizedInstance& inst,
                               const Eigen::VectorXd& x, double tol = kFeasibilityTol);

// Dual: every column satisfies sum_e A_eS y_e <= 1 + tol and y >= 0.
// worst_slack is the minimum of (1 - column load) over columns.
FeasibilityResult check_dual(const NormalizedInstance& inst,
                             const Eigen::VectorXd& y, double tol = kFeasibilityTol);

// General-form variants for denormalized solutions. Rows touching a
// saturated (zero-cost) column are covered by definition.
FeasibilityResult check_primal_general(const GeneralInstance& g, const Eigen::VectorXd& x,
                                       const std::vector<Index>& saturated_columns,
                                       double tol = kFeasibilityTol);
FeasibilityResult check_dual_general(const GeneralInstance& g, const Eigen::VectorXd& y,
                                     double tol = kFeasibilityTol);

// Weak-duality certificate: both solutions feasible and the primal/dual
// objective ratio equal to 1 + epsilon (up to kRatioTol, relative). A valid
// certificate pins the optimum into [dual_obj, primal_obj] without knowing
// it. An empty instance certifies vacuously; ratio is NaN there.
struct Certificate {
  bool primal_feasible = false;
  bool dual_feasible = false;
  double primal_slack = 0.0;
  double dual_slack = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double ratio = 0.0;
  double claimed_eps = 0.0;
  bool valid = false;
};

Certificate certify(const NormalizedInstance& inst, const PrimalDualSolution& sol,
                    double epsilon);

// Exact covering optimum by exhaustive basic-solution enumeration: for every
// equal-size (row set, column set) pair, solve the square subsystem, keep
// feasible candidates, take the minimum objective. Single-column closures
// x_S = 1 / max_e A_eS are included as extra candidates. Only for desk-size
// instances: requires n_rows + n_cols <= 12.
double exact_opt(const NormalizedInstance& inst);

struct AuditCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool all_pass = true;
};

// Replays a trace against the invariants the analysis promises:
//  - conservation: sum x = sum y after every phase;
//  - per-set efficiencies non-increasing, bounded by gamma_p, live elements
//    strictly below the stopping exponent (full traces only);
//  - max efficiency decays by at least alpha each phase;
//  - terminal state: all elements dead (s_e >= f), all efficiencies exactly
//    zero, every dual load Y_S <= (1 + epsilon) f.
// Failures are reported, never thrown.
AuditReport audit_trace(const PhaseTrace& trace, const Params& params,
                        const NormalizedInstance& inst);

nlohmann::ordered_json to_json(const Certificate& cert);
nlohmann::ordered_json to_json(const AuditReport& report);

}  // namespace covpack
