#include "covpack/verify.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "covpack/numeric.hpp"

namespace covpack {
namespace {

// Candidate acceptance slack for the enumeration oracle. Large enough that
// rounding in the small dense solves never rejects the true optimal vertex,
// small enough that an accepted near-vertex cannot move the reported optimum
// by anything close to the 1e-9 budget of the callers.
constexpr double kOracleTol = 1e-10;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FeasibilityResult check_primal(const NormalizedInstance& inst,
                               const Eigen::VectorXd& x, double tol) {
  if (x.size() != inst.sets()) {
    throw std::invalid_argument("check_primal: x dimension mismatch");
  }
  bool nonneg = true;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!(x[j] >= 0.0)) {
      nonneg = false;
      break;
    }
  }
  const Eigen::VectorXd cover = row_products(inst.matrix(), x);
  double worst = kInf;
  for (Index i = 0; i < inst.elements(); ++i) {
    worst = std::min(worst, cover[i] - 1.0);
  }
  return {nonneg && worst >= -tol, worst};
}

FeasibilityResult check_dual(const NormalizedInstance& inst,
                             const Eigen::VectorXd& y, double tol) {
  if (y.size() != inst.elements()) {
    throw std::invalid_argument("check_dual: y dimension mismatch");
  }
  bool nonneg = true;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(y[i] >= 0.0)) {
      nonneg = false;
      break;
    }
  }
  const Eigen::VectorXd load = col_products(inst.matrix(), y);
  double worst = kInf;
  for (Index j = 0; j < inst.sets(); ++j) {
    worst = std::min(worst, 1.0 - load[j]);
  }
  return {nonneg && worst >= -tol, worst};
}

FeasibilityResult check_primal_general(const GeneralInstance& g, const Eigen::VectorXd& x,
                                       const std::vector<Index>& saturated_columns,
                                       double tol) {
  if (x.size() != g.matrix.cols()) {
    throw std::invalid_argument("check_primal_general: x dimension mismatch");
  }
  bool nonneg = true;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!(x[j] >= 0.0)) {
      nonneg = false;
      break;
    }
  }
  std::vector<char> saturated(g.matrix.cols(), 0);
  for (Index j : saturated_columns) saturated[j] = 1;
  std::vector<char> row_covered(g.matrix.rows(), 0);
  for (const Entry& e : g.matrix.entries()) {
    if (saturated[e.col]) row_covered[e.row] = 1;
  }
  const Eigen::VectorXd cover = row_products(g.matrix, x);
  double worst = kInf;
  bool ok = nonneg;
  for (Index i = 0; i < g.matrix.rows(); ++i) {
    if (row_covered[i]) continue;  // met by a variable fixed at +infinity
    const double slack = cover[i] - g.b[i];
    worst = std::min(worst, slack);
    if (slack < -tol * std::max(1.0, g.b[i])) ok = false;
  }
  return {ok, worst};
}

FeasibilityResult check_dual_general(const GeneralInstance& g, const Eigen::VectorXd& y,
                                     double tol) {
  if (y.size() != g.matrix.rows()) {
    throw std::invalid_argument("check_dual_general: y dimension mismatch");
  }
  bool nonneg = true;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(y[i] >= 0.0)) {
      nonneg = false;
      break;
    }
  }
  const Eigen::VectorXd load = col_products(g.matrix, y);
  double worst = kInf;
  bool ok = nonneg;
  for (Index j = 0; j < g.matrix.cols(); ++j) {
    const double slack = g.c[j] - load[j];
    worst = std::min(worst, slack);
    if (slack < -tol * std::max(1.0, g.c[j])) ok = false;
  }
  return {ok, worst};
}

Certificate certify(const NormalizedInstance& inst, const PrimalDualSolution& sol,
                    double epsilon) {
  Certificate cert;
  cert.claimed_eps = epsilon;
  const FeasibilityResult primal = check_primal(inst, sol.x, kFeasibilityTol);
  const FeasibilityResult dual = check_dual(inst, sol.y, kFeasibilityTol);
  cert.primal_feasible = primal.feasible;
  cert.primal_slack = primal.worst_slack;
  cert.dual_feasible = dual.feasible;
  cert.dual_slack = dual.worst_slack;
  cert.primal_obj = vec_sum(sol.x);
  cert.dual_obj = vec_sum(sol.y);

  const double target = 1.0 + epsilon;
  bool ratio_ok = false;
  if (cert.dual_obj > 0.0) {
    cert.ratio = cert.primal_obj / cert.dual_obj;
    ratio_ok = std::abs(cert.ratio - target) <= kRatioTol * target;
  } else {
    cert.ratio = std::numeric_limits<double>::quiet_NaN();
    // Only the empty instance certifies with a zero dual objective.
    ratio_ok = inst.elements() == 0 && cert.primal_obj == 0.0;
  }
  cert.valid = cert.primal_feasible && cert.dual_feasible && ratio_ok;
  return cert;
}

double exact_opt(const NormalizedInstance& inst) {
  const Index n = inst.elements();
  const Index m = inst.sets();
  if (n + m > 12) {
    throw std::invalid_argument("exact_opt: requires n_rows + n_cols <= 12");
  }
  if (n == 0) return 0.0;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, m);
  for (const Entry& e : inst.matrix().entries()) a(e.row, e.col) = e.value;

  double best = kInf;
  const auto consider = [&](const Eigen::VectorXd& x) {
    for (Index j = 0; j < m; ++j) {
      if (x[j] < -kOracleTol) return;
    }
    const Eigen::VectorXd cover = a * x;
    for (Index i = 0; i < n; ++i) {
      if (cover[i] < 1.0 - kOracleTol) return;
    }
    best = std::min(best, x.sum());
  };

  // Single-column closures.
  for (Index j = 0; j < m; ++j) {
    double col_max = 0.0;
    for (const Incidence& inc : inst.matrix().col(j)) {
      col_max = std::max(col_max, inc.value);
    }
    if (col_max <= 0.0) continue;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    x[j] = 1.0 / col_max;
    consider(x);
  }

  // Every basic candidate: equal-size row/column subsets, tight rows solved
  // against the chosen support.
  std::vector<Index> rows_of, cols_of;
  for (std::uint32_t rmask = 0; rmask < (1u << n); ++rmask) {
    const int k = std::popcount(rmask);
    if (k > m) continue;
    rows_of.clear();
    for (Index i = 0; i < n; ++i) {
      if (rmask & (1u << i)) rows_of.push_back(i);
    }
    for (std::uint32_t cmask = 0; cmask < (1u << m); ++cmask) {
      if (std::popcount(cmask) != k) continue;
      cols_of.clear();
      for (Index j = 0; j < m; ++j) {
        if (cmask & (1u << j)) cols_of.push_back(j);
      }
      Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
      if (k > 0) {
        Eigen::MatrixXd sub(k, k);
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) sub(r, c) = a(rows_of[r], cols_of[c]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd x_sub = lu.solve(Eigen::VectorXd::Ones(k));
        for (int c = 0; c < k; ++c) x[cols_of[c]] = x_sub[c];
      }
      consider(x);
    }
  }
  return best;
}

AuditReport audit_trace(const PhaseTrace& trace, const Params& params,
                        const NormalizedInstance& inst) {
  AuditReport report;
  const SparseNonNegMatrix& a = inst.matrix();
  const Index n = a.rows();
  const Index m = a.cols();
  const bool full = trace.level == TraceLevel::kFull;
  const auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back(AuditCheck{name, pass, detail});
    if (!pass) report.all_pass = false;
  };

  // Reconstruct the exponents from the selection lists alone; the updates
  // follow the exact accumulation order of the solvers, so the result must
  // match final_s bit for bit.
  Eigen::VectorXd s_rec = Eigen::VectorXd::Zero(n);

  bool conservation_ok = true;
  std::string conservation_detail;
  bool liveness_ok = true;
  std::string liveness_detail;
  double cum_x = 0.0;
  double cum_y = 0.0;

  std::vector<char> is_selected(m, 0);
  for (std::size_t ph = 0; ph < trace.phases.size(); ++ph) {
    const PhaseRecord& rec = trace.phases[ph];
    cum_x += static_cast<double>(rec.selected.size());
    cum_y += full ? vec_sum(rec.delta_y) : rec.sum_delta_y;
    if (std::abs(cum_x - cum_y) > 1e-9 * std::max(1.0, cum_x) && conservation_ok) {
      conservation_ok = false;
      conservation_detail = "sum x != sum y after phase " + std::to_string(ph + 1);
    }

    // An element may only receive an increment while live (s < f) at the
    // start of the phase.
    if (full && liveness_ok) {
      for (Index e = 0; e < n; ++e) {
        if (rec.delta_y[e] != 0.0 && !(s_rec[e] < params.f)) {
          liveness_ok = false;
          liveness_detail = "element " + std::to_string(e) +
                            " updated after death in phase " + std::to_string(ph + 1);
          break;
        }
      }
    }

    for (Index j : rec.selected) is_selected[j] = 1;
    for (Index e = 0; e < n; ++e) {
      if (s_rec[e] >= params.f) continue;  // dead elements stay frozen
      double ds = 0.0;
      for (const Incidence& inc : a.row(e)) {
        if (is_selected[inc.index]) ds += inc.value;
      }
      if (ds > 0.0) s_rec[e] += ds;
    }
    for (Index j : rec.selected) is_selected[j] = 0;
  }

  add("conservation", conservation_ok, conservation_detail);
  add("live_updates_only", liveness_ok, liveness_detail);

  if (full) {
    bool monotone_ok = true;
    std::string monotone_detail;
    bool range_ok = true;
    std::string range_detail;
    const double gp_cap = inst.stats().gamma_p * (1.0 + 1e-12);
    for (Index j = 0; j < m && monotone_ok && range_ok; ++j) {
      double prev = kInf;
      for (std::size_t ph = 0; ph < trace.phases.size(); ++ph) {
        const double v = trace.phases[ph].rho_before[j];
        if (v > prev) {
          monotone_ok = false;
          monotone_detail = "rho of set " + std::to_string(j) + " increased at phase " +
                            std::to_string(ph + 1);
          break;
        }
        if (v > gp_cap) {
          range_ok = false;
          range_detail = "rho of set " + std::to_string(j) + " exceeds gamma_p";
          break;
        }
        prev = v;
      }
      if (monotone_ok && trace.final_rho.size() == m && trace.final_rho[j] > prev) {
        monotone_ok = false;
        monotone_detail = "final rho of set " + std::to_string(j) + " increased";
      }
    }
    add("rho_monotone", monotone_ok, monotone_detail);
    add("rho_range", range_ok, range_detail);

    bool load_monotone_ok = true;
    std::string load_detail;
    for (Index j = 0; j < m && load_monotone_ok; ++j) {
      double prev = 0.0;
      for (std::size_t ph = 0; ph < trace.phases.size(); ++ph) {
        const double v = trace.phases[ph].y_load_after[j];
        if (v < prev) {
          load_monotone_ok = false;
          load_detail = "dual load of set " + std::to_string(j) + " decreased at phase " +
                        std::to_string(ph + 1);
          break;
        }
        prev = v;
      }
    }
    add("dual_load_monotone", load_monotone_ok, load_detail);
  }

  {
    bool decay_ok = true;
    std::string decay_detail;
    for (std::size_t ph = 0; ph + 1 < trace.phases.size(); ++ph) {
      const double before = trace.phases[ph].max_rho_before;
      const double after = trace.phases[ph + 1].max_rho_before;
      if (after > (before / params.alpha) * (1.0 + 1e-9)) {
        decay_ok = false;
        decay_detail = "max rho decayed by less than alpha at phase " + std::to_string(ph + 1);
        break;
      }
    }
    if (decay_ok && !trace.phases.empty()) {
      const double last = trace.phases.back().max_rho_before;
      const double final_max = vec_max_or(trace.final_rho, 0.0);
      if (final_max > (last / params.alpha) * (1.0 + 1e-9)) {
        decay_ok = false;
        decay_detail = "max rho decayed by less than alpha in the final phase";
      }
    }
    add("max_rho_alpha_decay", decay_ok, decay_detail);
  }

  {
    bool consistent = trace.final_s.size() == n;
    std::string detail;
    if (consistent) {
      for (Index e = 0; e < n; ++e) {
        if (s_rec[e] != trace.final_s[e]) {
          consistent = false;
          detail = "reconstructed exponent of element " + std::to_string(e) +
                   " differs from the recorded one";
          break;
        }
      }
    } else {
      detail = "final_s has the wrong dimension";
    }
    add("exponent_reconstruction", consistent, detail);
  }

  {
    bool all_dead = true;
    std::string detail;
    for (Index e = 0; e < n; ++e) {
      if (!(s_rec[e] >= params.f)) {
        all_dead = false;
        detail = "element " + std::to_string(e) + " ended live (s < f)";
        break;
      }
    }
    add("terminal_all_dead", all_dead, detail);
  }

  {
    bool rho_zero = trace.final_rho.size() == m;
    std::string detail = rho_zero ? "" : "final_rho has the wrong dimension";
    for (Index j = 0; rho_zero && j < m; ++j) {
      if (trace.final_rho[j] != 0.0) {
        rho_zero = false;
        detail = "final rho of set " + std::to_string(j) + " is nonzero";
      }
    }
    add("terminal_rho_zero", rho_zero, detail);
  }

  {
    bool bound_ok = trace.raw_y.size() == n;
    std::string detail = bound_ok ? "" : "raw_y has the wrong dimension";
    if (bound_ok) {
      const Eigen::VectorXd loads = col_products(a, trace.raw_y);
      const double cap = (1.0 + params.epsilon) * params.f * (1.0 + 1e-9);
      for (Index j = 0; j < m; ++j) {
        if (loads[j] > cap) {
          bound_ok = false;
          detail = "dual load of set " + std::to_string(j) + " exceeds (1+eps) f";
          break;
        }
      }
    }
    add("terminal_dual_load", bound_ok, detail);
  }

  return report;
}

nlohmann::ordered_json to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["valid"] = cert.valid;
  j["primal_feasible"] = cert.primal_feasible;
  j["dual_feasible"] = cert.dual_feasible;
  j["primal_slack"] = cert.primal_slack;
  j["dual_slack"] = cert.dual_slack;
  j["primal_obj"] = cert.primal_obj;
  j["dual_obj"] = cert.dual_obj;
  j["ratio"] = std::isnan(cert.ratio) ? nlohmann::ordered_json(nullptr)
                                      : nlohmann::ordered_json(cert.ratio);
  j["claimed_eps"] = cert.claimed_eps;
  return j;
}

nlohmann::ordered_json to_json(const AuditReport& report) {
  nlohmann::ordered_json j;
  j["all_pass"] = report.all_pass;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const AuditCheck& check : report.checks) {
    nlohmann::ordered_json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    if (!check.detail.empty()) c["detail"] = check.detail;
    checks.push_back(c);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace covpack
