#include "covpack/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "covpack/numeric.hpp"

namespace covpack {

Params setup_params(double epsilon, const NormalizedInstance& inst) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  const InstanceStats& stats = inst.stats();
  // gamma_d >= 1 on any instance with entries; the max() only guards the
  // degenerate entry-free case so the formulas stay total.
  const double gamma_d_eff = std::max(stats.gamma_d, 1.0);
  const double ln_gp = stats.gamma_p > 1.0 ? std::log(stats.gamma_p) : 0.0;

  Params p;
  p.epsilon = epsilon;
  for (double c = 4.0;; c *= 2.0) {
    const double alpha = 1.0 + epsilon / (c * gamma_d_eff);
    const double ln_alpha = std::log(alpha);
    const double log_alpha_gp = ln_gp / ln_alpha;
    const double f = std::max(1.0, 2.0 * ln_gp / (epsilon * ln_alpha));
    const double amplification = std::pow(alpha, stats.gamma_d + 1.0);
    if (amplification * f + amplification * log_alpha_gp <= (1.0 + epsilon) * f) {
      p.alpha = alpha;
      p.f = f;
      p.phase_limit = static_cast<std::int64_t>(std::ceil(log_alpha_gp + f));
      p.c_const = c;
      return p;
    }
  }
}

SolverState make_initial_state(const NormalizedInstance& inst) {
  SolverState st;
  st.x = Eigen::VectorXd::Zero(inst.sets());
  st.y = Eigen::VectorXd::Zero(inst.elements());
  st.s = Eigen::VectorXd::Zero(inst.elements());
  st.r = Eigen::VectorXd::Constant(inst.elements(), 1.0);
  st.dead.assign(inst.elements(), 0);
  st.live_count = inst.elements();
  st.phase_index = 0;
  return st;
}

namespace {

double live_column_sum(const SolverState& st, const SparseNonNegMatrix& a, Index set) {
  double sum = 0.0;
  for (const Incidence& inc : a.col(set)) {
    if (!st.dead[inc.index]) sum += inc.value * st.r[inc.index];
  }
  return sum;
}

std::vector<Index> select_from(const Eigen::VectorXd& rho_vec,
                               const NormalizedInstance& inst, const Params& params) {
  const SparseNonNegMatrix& a = inst.matrix();
  const Index n = a.rows();
  const Index m = a.cols();
  // Two-hop max via the elements: element_max[e] = max rho over sets
  // containing e, then the neighborhood max of S is the max over its
  // elements. This is the same aggregation the network protocol performs.
  Eigen::VectorXd element_max = Eigen::VectorXd::Zero(n);
  for (Index e = 0; e < n; ++e) {
    double best = 0.0;
    for (const Incidence& inc : a.row(e)) best = std::max(best, rho_vec[inc.index]);
    element_max[e] = best;
  }
  std::vector<Index> selected;
  for (Index j = 0; j < m; ++j) {
    if (!(rho_vec[j] > 0.0)) continue;
    double neighborhood = 0.0;
    for (const Incidence& inc : a.col(j)) {
      neighborhood = std::max(neighborhood, element_max[inc.index]);
    }
    if (rho_vec[j] >= neighborhood / params.alpha) selected.push_back(j);
  }
  return selected;
}

// Applies one phase against pre-phase efficiencies. The per-element fold
// visits incident sets in ascending order, exactly like a mailbox ordered by
// sender id, so the distributed realization reproduces it bit for bit.
void apply_selected(SolverState& st, const NormalizedInstance& inst, const Params& params,
                    const Eigen::VectorXd& rho_vec, const std::vector<Index>& selected,
                    PhaseRecord* record) {
  const SparseNonNegMatrix& a = inst.matrix();
  for (Index j : selected) {
    if (!(rho_vec[j] > 0.0)) {
      throw std::logic_error("apply_phase: selected set has zero efficiency");
    }
    st.x[j] += 1.0;
  }
  std::vector<char> is_selected(a.cols(), 0);
  for (Index j : selected) is_selected[j] = 1;

  const bool record_vectors = record != nullptr && record->delta_y.size() > 0;
  double sum_dy = 0.0;
  for (Index e = 0; e < a.rows(); ++e) {
    if (st.dead[e]) continue;
    double dy = 0.0;
    double ds = 0.0;
    for (const Incidence& inc : a.row(e)) {
      if (!is_selected[inc.index]) continue;
      dy += inc.value * st.r[e] / rho_vec[inc.index];
      ds += inc.value;
    }
    if (ds > 0.0) {
      st.y[e] += dy;
      st.s[e] += ds;
      if (st.s[e] >= params.f) {
        st.dead[e] = 1;
        st.r[e] = 0.0;
        --st.live_count;
      } else {
        st.r[e] = std::pow(params.alpha, -st.s[e]);
      }
      sum_dy += dy;
      if (record_vectors) record->delta_y[e] = dy;
    }
  }
  if (record != nullptr) record->sum_delta_y = sum_dy;
  ++st.phase_index;
}

}  // namespace

double rho(const SolverState& state, const NormalizedInstance& inst, Index set) {
  return live_column_sum(state, inst.matrix(), set);
}

Eigen::VectorXd efficiencies(const SolverState& state, const NormalizedInstance& inst) {
  Eigen::VectorXd out(inst.sets());
  for (Index j = 0; j < inst.sets(); ++j) {
    out[j] = live_column_sum(state, inst.matrix(), j);
  }
  return out;
}

std::vector<Index> select(const SolverState& state, const NormalizedInstance& inst,
                          const Params& params) {
  return select_from(efficiencies(state, inst), inst, params);
}

void apply_phase(SolverState& state, const NormalizedInstance& inst,
                 const Params& params, const std::vector<Index>& selected) {
  apply_selected(state, inst, params, efficiencies(state, inst), selected, nullptr);
}

RunResult run(const NormalizedInstance& inst, double epsilon, TraceLevel level) {
  RunResult out;
  out.params = setup_params(epsilon, inst);
  const Index n = inst.elements();

  SolverState st = make_initial_state(inst);
  out.trace.level = level;
  for (std::int64_t phase = 0; phase < out.params.phase_limit; ++phase) {
    if (st.live_count == 0) break;
    Eigen::VectorXd rho_vec = efficiencies(st, inst);
    PhaseRecord rec;
    rec.selected = select_from(rho_vec, inst, out.params);
    rec.max_rho_before = vec_max_or(rho_vec, 0.0);
    if (level == TraceLevel::kFull) {
      rec.delta_y = Eigen::VectorXd::Zero(n);
    }
    apply_selected(st, inst, out.params, rho_vec, rec.selected, &rec);
    rec.sum_x_after = vec_sum(st.x);
    rec.sum_y_after = vec_sum(st.y);
    if (level == TraceLevel::kFull) {
      rec.rho_before = std::move(rho_vec);
      rec.y_load_after = col_products(inst.matrix(), st.y);
    }
    out.trace.phases.push_back(std::move(rec));
  }
  out.trace.executed_phases = static_cast<std::int64_t>(out.trace.phases.size());
  out.trace.final_s = st.s;
  out.trace.final_rho = efficiencies(st, inst);
  out.trace.raw_x = st.x;
  out.trace.raw_y = st.y;

  PrimalDualSolution sol;
  sol.x = st.x / out.params.f;
  sol.y = st.y / ((1.0 + out.params.epsilon) * out.params.f);
  sol.primal_objective = vec_sum(sol.x);
  sol.dual_objective = vec_sum(sol.y);
  out.solution = std::move(sol);
  return out;
}

}  // namespace covpack
