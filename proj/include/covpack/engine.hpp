#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "covpack/instance.hpp"

namespace covpack {

// Phase-loop parameters. alpha controls the selection slack, f the stopping
// exponent, phase_limit the worst-case phase count. c_const starts at 4 and
// doubles until the dual-load safety inequality
//   alpha^(gamma_d + 1) * (f + log_alpha(gamma_p)) <= (1 + epsilon) * f
// holds, which is exactly what the dual feasibility bound needs.
struct Params {
  double epsilon = 0.0;
  double alpha = 0.0;           // 1 + epsilon / (c_const * gamma_d)
  double f = 0.0;               // max(1, 2 ln(gamma_p) / (epsilon ln(alpha)))
  std::int64_t phase_limit = 0; // ceil(log_alpha(gamma_p) + f)
  double c_const = 0.0;
};

Params setup_params(double epsilon, const NormalizedInstance& inst);

// Mutable per-run state. Requirements are kept in exponent form,
// r_e = alpha^(-s_e), truncated to exactly 0 once s_e >= f; the element is
// then dead and never resurrects. r caches the current power so each phase
// costs one pow per element actually updated.
struct SolverState {
  Eigen::VectorXd x;  // per set: number of times selected so far
  Eigen::VectorXd y;  // per element
  Eigen::VectorXd s;  // per element: accumulated exponent
  Eigen::VectorXd r;  // per element: alpha^(-s), exactly 0 once dead
  std::vector<char> dead;
  Index live_count = 0;
  std::int64_t phase_index = 0;
};

SolverState make_initial_state(const NormalizedInstance& inst);

enum class TraceLevel { kLight, kFull };

// Snapshot of one phase. The per-vector fields are filled only at
// TraceLevel::kFull; the scalar aggregates are always present.
struct PhaseRecord {
  std::vector<Index> selected;   // ascending set indices
  double max_rho_before = 0.0;
  double sum_delta_y = 0.0;
  double sum_x_after = 0.0;
  double sum_y_after = 0.0;
  Eigen::VectorXd rho_before;    // per set
  Eigen::VectorXd delta_y;       // per element
  Eigen::VectorXd y_load_after;  // per set: Y_S = sum_{e in S} A_eS y_e
};

struct PhaseTrace {
  TraceLevel level = TraceLevel::kFull;
  std::vector<PhaseRecord> phases;
  std::int64_t executed_phases = 0;
  Eigen::VectorXd final_s;
  Eigen::VectorXd final_rho;
  Eigen::VectorXd raw_x;  // selection counts, before the /f scaling
  Eigen::VectorXd raw_y;
  // Filled by the congest simulator; zero for centralized runs.
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  int max_payload_bits = 0;
};

struct RunResult {
  PrimalDualSolution solution;
  PhaseTrace trace;
  Params params;
};

// Efficiency rho_S = sum over live elements e of S of A_eS * r_e; 0 when all
// elements of S are dead or S has no entries.
double rho(const SolverState& state, const NormalizedInstance& inst, Index set);

// rho for every set, ascending element order within each column.
Eigen::VectorXd efficiencies(const SolverState& state, const NormalizedInstance& inst);

// Sets with rho_S > 0 and rho_S >= (max rho over sets sharing an element
// with S, S itself included) / alpha. Zero-efficiency sets are never picked.
std::vector<Index> select(const SolverState& state, const NormalizedInstance& inst,
                          const Params& params);

// One phase: bump x on every selected set, then fold the selections into
// y, s, r and the death flags, all against the pre-phase efficiencies.
// `selected` must come from select() on the same state.
void apply_phase(SolverState& state, const NormalizedInstance& inst,
                 const Params& params, const std::vector<Index>& selected);

// Full phase loop; stops early once every element is dead. Returns x/f and
// y/((1+epsilon) f) together with the trace and the parameters used.
// Identical inputs produce bit-identical outputs.
RunResult run(const NormalizedInstance& inst, double epsilon,
              TraceLevel level = TraceLevel::kFull);

}  // namespace covpack
