#include "covpack/congest.hpp"

#include <cmath>
#include <stdexcept>

#include "covpack/numeric.hpp"

namespace covpack {

CongestNetwork::CongestNetwork(const NormalizedInstance& inst, int bit_budget)
    : bit_budget_(bit_budget) {
  const SparseNonNegMatrix& a = inst.matrix();
  left_.resize(a.cols());
  right_.resize(a.rows());
  for (Index j = 0; j < a.cols(); ++j) {
    LeftNode& node = left_[j];
    const auto column = a.col(j);
    node.elements.assign(column.begin(), column.end());
    node.peer_s.assign(node.elements.size(), 0.0);
    node.peer_r.assign(node.elements.size(), 1.0);
  }
  for (Index i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    right_[i].sets.assign(row.begin(), row.end());
  }
  left_inbox_.resize(left_.size());
  right_inbox_.resize(right_.size());
  for (Index j = 0; j < a.cols(); ++j) left_inbox_[j].reserve(left_[j].elements.size());
  for (Index i = 0; i < a.rows(); ++i) right_inbox_[i].reserve(right_[i].sets.size());
  live_count_ = a.rows();
  edge_count_ = a.nnz();
}

void CongestNetwork::send_to_left(Index receiver, const Message& m) {
  if (kMessagePayloadBits > bit_budget_) {
    throw std::runtime_error("congest simulation fault: message exceeds bit budget");
  }
  ++messages_;
  if (kMessagePayloadBits > max_payload_bits_) max_payload_bits_ = kMessagePayloadBits;
  if (message_observer) message_observer(rounds_, m, true, receiver);
  left_inbox_[receiver].push_back(m);
}

void CongestNetwork::send_to_right(Index receiver, const Message& m) {
  if (kMessagePayloadBits > bit_budget_) {
    throw std::runtime_error("congest simulation fault: message exceeds bit budget");
  }
  ++messages_;
  if (kMessagePayloadBits > max_payload_bits_) max_payload_bits_ = kMessagePayloadBits;
  if (message_observer) message_observer(rounds_, m, false, receiver);
  right_inbox_[receiver].push_back(m);
}

Index CongestNetwork::run_phase_protocol(const Params& params, PhaseRecord* record) {
  const Index m = left_count();
  const Index n = right_count();

  // Round 1: live right nodes broadcast their requirement exponent. Nodes
  // are processed in id order, so each inbox arrives sorted by sender.
  ++rounds_;
  for (Index j = 0; j < m; ++j) left_inbox_[j].clear();
  for (Index i = 0; i < n; ++i) {
    const RightNode& e = right_[i];
    if (e.dead) continue;
    for (const Incidence& inc : e.sets) {
      send_to_left(inc.index, Message{i, MessageTag::kReq, e.s});
    }
  }
  for (Index j = 0; j < m; ++j) {
    LeftNode& node = left_[j];
    double sum = 0.0;
    std::size_t at = 0;  // two-pointer walk: inbox and elements share order
    for (const Message& msg : left_inbox_[j]) {
      while (node.elements[at].index != msg.sender) ++at;
      if (msg.payload != node.peer_s[at]) {
        node.peer_s[at] = msg.payload;
        node.peer_r[at] = std::pow(params.alpha, -msg.payload);
      }
      sum += node.elements[at].value * node.peer_r[at];
    }
    node.rho = sum;
  }
  if (record != nullptr) {
    double mx = 0.0;
    for (Index j = 0; j < m; ++j) mx = std::max(mx, left_[j].rho);
    record->max_rho_before = mx;
    if (record->rho_before.size() > 0) {
      for (Index j = 0; j < m; ++j) record->rho_before[j] = left_[j].rho;
    }
  }

  // Round 2: efficiencies travel back; right nodes keep the incident max.
  ++rounds_;
  for (Index i = 0; i < n; ++i) right_inbox_[i].clear();
  for (Index j = 0; j < m; ++j) {
    const LeftNode& node = left_[j];
    if (!(node.rho > 0.0)) continue;
    for (const Incidence& inc : node.elements) {
      send_to_right(inc.index, Message{j, MessageTag::kRho, node.rho});
    }
  }
  for (Index i = 0; i < n; ++i) {
    double mu = 0.0;
    for (const Message& msg : right_inbox_[i]) mu = std::max(mu, msg.payload);
    right_[i].mu = mu;
  }

  // Round 3: the relayed max reaches every set sharing an element; a set
  // self-selects iff it is within an alpha factor of that max.
  ++rounds_;
  for (Index j = 0; j < m; ++j) left_inbox_[j].clear();
  for (Index i = 0; i < n; ++i) {
    const RightNode& e = right_[i];
    if (!(e.mu > 0.0)) continue;
    for (const Incidence& inc : e.sets) {
      send_to_left(inc.index, Message{i, MessageTag::kMax, e.mu});
    }
  }
  Index selected_count = 0;
  for (Index j = 0; j < m; ++j) {
    LeftNode& node = left_[j];
    double neighborhood = 0.0;
    for (const Message& msg : left_inbox_[j]) {
      neighborhood = std::max(neighborhood, msg.payload);
    }
    node.selected = node.rho > 0.0 && node.rho >= neighborhood / params.alpha;
    if (node.selected) {
      node.x += 1.0;
      ++selected_count;
      if (record != nullptr) record->selected.push_back(j);
    }
  }

  // Round 4: selection announcements carry rho_S; live right nodes fold them
  // into y, s and the death flag, in sender order.
  ++rounds_;
  for (Index i = 0; i < n; ++i) right_inbox_[i].clear();
  for (Index j = 0; j < m; ++j) {
    const LeftNode& node = left_[j];
    if (!node.selected) continue;
    for (const Incidence& inc : node.elements) {
      send_to_right(inc.index, Message{j, MessageTag::kSelected, node.rho});
    }
  }
  const bool record_vectors = record != nullptr && record->delta_y.size() > 0;
  double sum_dy = 0.0;
  for (Index i = 0; i < n; ++i) {
    RightNode& e = right_[i];
    e.last_delta_y = 0.0;
    if (e.dead) continue;
    double dy = 0.0;
    double ds = 0.0;
    std::size_t at = 0;
    for (const Message& msg : right_inbox_[i]) {
      while (e.sets[at].index != msg.sender) ++at;
      dy += e.sets[at].value * e.r / msg.payload;
      ds += e.sets[at].value;
    }
    if (ds > 0.0) {
      e.y += dy;
      e.s += ds;
      if (e.s >= params.f) {
        e.dead = true;
        e.r = 0.0;
        --live_count_;
      } else {
        e.r = std::pow(params.alpha, -e.s);
      }
      e.last_delta_y = dy;
      sum_dy += dy;
      if (record_vectors) record->delta_y[i] = dy;
    }
  }
  if (record != nullptr) record->sum_delta_y = sum_dy;
  return selected_count;
}

Eigen::VectorXd CongestNetwork::x_vector() const {
  Eigen::VectorXd out(left_count());
  for (Index j = 0; j < left_count(); ++j) out[j] = left_[j].x;
  return out;
}

Eigen::VectorXd CongestNetwork::y_vector() const {
  Eigen::VectorXd out(right_count());
  for (Index i = 0; i < right_count(); ++i) out[i] = right_[i].y;
  return out;
}

Eigen::VectorXd CongestNetwork::s_vector() const {
  Eigen::VectorXd out(right_count());
  for (Index i = 0; i < right_count(); ++i) out[i] = right_[i].s;
  return out;
}

Eigen::VectorXd CongestNetwork::rho_vector() const {
  Eigen::VectorXd out(left_count());
  for (Index j = 0; j < left_count(); ++j) {
    double sum = 0.0;
    for (const Incidence& inc : left_[j].elements) {
      const RightNode& e = right_[inc.index];
      if (!e.dead) sum += inc.value * e.r;
    }
    out[j] = sum;
  }
  return out;
}

CongestNetwork build_network(const NormalizedInstance& inst, int bit_budget) {
  return CongestNetwork(inst, bit_budget);
}

DistributedRunResult run_distributed(const NormalizedInstance& inst, double epsilon,
                                     TraceLevel level, int bit_budget) {
  DistributedRunResult out;
  out.params = setup_params(epsilon, inst);
  const Index n = inst.elements();
  const Index m = inst.sets();

  CongestNetwork net = build_network(inst, bit_budget);
  out.trace.level = level;
  for (std::int64_t phase = 0; phase < out.params.phase_limit; ++phase) {
    if (!net.any_live()) break;
    PhaseRecord rec;
    if (level == TraceLevel::kFull) {
      rec.rho_before.resize(m);
      rec.delta_y = Eigen::VectorXd::Zero(n);
    }
    net.run_phase_protocol(out.params, &rec);
    rec.sum_x_after = vec_sum(net.x_vector());
    rec.sum_y_after = vec_sum(net.y_vector());
    if (level == TraceLevel::kFull) {
      rec.y_load_after = col_products(inst.matrix(), net.y_vector());
    }
    out.trace.phases.push_back(std::move(rec));
  }
  out.trace.executed_phases = static_cast<std::int64_t>(out.trace.phases.size());
  out.trace.final_s = net.s_vector();
  out.trace.final_rho = net.rho_vector();
  out.trace.raw_x = net.x_vector();
  out.trace.raw_y = net.y_vector();
  out.trace.rounds = net.rounds();
  out.trace.messages = net.messages();
  out.trace.max_payload_bits = net.max_payload_bits();

  PrimalDualSolution sol;
  sol.x = out.trace.raw_x / out.params.f;
  sol.y = out.trace.raw_y / ((1.0 + out.params.epsilon) * out.params.f);
  sol.primal_objective = vec_sum(sol.x);
  sol.dual_objective = vec_sum(sol.y);
  out.solution = std::move(sol);

  out.stats.phases = out.trace.executed_phases;
  out.stats.rounds = net.rounds();
  out.stats.messages = net.messages();
  out.stats.max_payload_bits = net.max_payload_bits();
  out.stats.bit_budget = net.bit_budget();
  out.stats.phase_limit = out.params.phase_limit;
  return out;
}

}  // namespace covpack
