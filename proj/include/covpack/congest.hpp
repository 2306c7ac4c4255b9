#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "covpack/engine.hpp"
#include "covpack/instance.hpp"

namespace covpack {

enum class MessageTag : std::uint8_t { kReq = 0, kRho = 1, kMax = 2, kSelected = 3 };

// One CONGEST message: a tag plus a single 64-bit real. The accounted
// payload is 64 + 2 bits, checked against the configured budget on send.
struct Message {
  Index sender = 0;
  MessageTag tag = MessageTag::kReq;
  double payload = 0.0;
};

inline constexpr int kMessagePayloadBits = 66;
inline constexpr int kDefaultBitBudget = 128;

// Left node: owns one primal variable x_S and initially knows only its
// column of A.
struct LeftNode {
  std::vector<Incidence> elements;  // incident elements, ascending
  double x = 0.0;
  double rho = 0.0;
  bool selected = false;
  // Memoized alpha^(-s) per incident element, keyed by the last exponent
  // received from it. Aligned with `elements`.
  std::vector<double> peer_s;
  std::vector<double> peer_r;
};

// Right node: owns the dual variable y_e and the requirement exponent s_e;
// initially knows only its row of A.
struct RightNode {
  std::vector<Incidence> sets;  // incident sets, ascending
  double y = 0.0;
  double s = 0.0;
  double r = 1.0;    // alpha^(-s), exactly 0 once dead
  double mu = 0.0;   // max incident efficiency seen this phase
  double last_delta_y = 0.0;
  bool dead = false;
};

struct RoundStats {
  std::int64_t phases = 0;
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  int max_payload_bits = 0;
  int bit_budget = kDefaultBitBudget;
  std::int64_t phase_limit = 0;  // analytic bound on phases
};

// Synchronous lock-step simulator on the bipartite constraint graph: one
// node per primal variable (left), one per dual variable (right), one edge
// per stored coefficient, known to both endpoints. A solver phase costs
// exactly four rounds:
//   1. live right nodes send their exponent s_e to incident left nodes,
//      which recompute rho_S;
//   2. left nodes with rho_S > 0 broadcast it; right nodes take the max mu_e;
//   3. right nodes with mu_e > 0 relay the max; left nodes self-select iff
//      rho_S >= (max incident mu) / alpha and bump x_S;
//   4. selected left nodes announce (SELECTED, rho_S); right nodes fold the
//      announcements into y_e, s_e and the death flag.
// Node programs see only their own state and their inbox; delivery happens
// at round boundaries and inboxes are ordered by sender id, so the
// arithmetic reproduces the centralized engine bit for bit.
class CongestNetwork {
 public:
  explicit CongestNetwork(const NormalizedInstance& inst,
                          int bit_budget = kDefaultBitBudget);

  // Executes one phase (four rounds); returns the number of self-selected
  // sets. If `record` is given, selected indices and aggregates are filled;
  // rho_before/delta_y are filled only when pre-sized by the caller.
  Index run_phase_protocol(const Params& params, PhaseRecord* record = nullptr);

  bool any_live() const { return live_count_ > 0; }
  Index live_count() const { return live_count_; }
  Index left_count() const { return static_cast<Index>(left_.size()); }
  Index right_count() const { return static_cast<Index>(right_.size()); }
  Index edge_count() const { return edge_count_; }

  const LeftNode& left(Index j) const { return left_[j]; }
  const RightNode& right(Index i) const { return right_[i]; }
  // Test hooks (used by the locality audit to corrupt non-neighbor state).
  LeftNode& mutable_left(Index j) { return left_[j]; }
  RightNode& mutable_right(Index i) { return right_[i]; }

  std::int64_t rounds() const { return rounds_; }
  std::int64_t messages() const { return messages_; }
  int max_payload_bits() const { return max_payload_bits_; }
  int bit_budget() const { return bit_budget_; }

  // Simulator-level observations (never visible to node programs).
  Eigen::VectorXd x_vector() const;
  Eigen::VectorXd y_vector() const;
  Eigen::VectorXd s_vector() const;
  Eigen::VectorXd rho_vector() const;

  // Invoked for every delivered message; test instrumentation only.
  std::function<void(std::int64_t round, const Message& m, bool to_left, Index receiver)>
      message_observer;

 private:
  void send_to_left(Index receiver, const Message& m);
  void send_to_right(Index receiver, const Message& m);

  std::vector<LeftNode> left_;
  std::vector<RightNode> right_;
  std::vector<std::vector<Message>> left_inbox_;
  std::vector<std::vector<Message>> right_inbox_;
  Index live_count_ = 0;
  Index edge_count_ = 0;
  std::int64_t rounds_ = 0;
  std::int64_t messages_ = 0;
  int max_payload_bits_ = 0;
  int bit_budget_ = kDefaultBitBudget;
};

CongestNetwork build_network(const NormalizedInstance& inst,
                             int bit_budget = kDefaultBitBudget);

struct DistributedRunResult {
  PrimalDualSolution solution;
  PhaseTrace trace;
  RoundStats stats;
  Params params;
};

// Drives the network for at most phase_limit phases, stopping early once no
// element is live. The returned solution matches engine run() bit for bit.
DistributedRunResult run_distributed(const NormalizedInstance& inst, double epsilon,
                                     TraceLevel level = TraceLevel::kFull,
                                     int bit_budget = kDefaultBitBudget);

}  // namespace covpack
