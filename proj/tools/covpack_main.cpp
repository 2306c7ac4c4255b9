// covpack command line: generate, normalize, solve, verify and benchmark
// covering/packing instances. Exit codes: 0 success/valid certificate,
// 1 invalid certificate or solver mismatch, 2 usage error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covpack/congest.hpp"
#include "covpack/engine.hpp"
#include "covpack/generators.hpp"
#include "covpack/instance.hpp"
#include "covpack/instance_io.hpp"
#include "covpack/normalize.hpp"
#include "covpack/numeric.hpp"
#include "covpack/verify.hpp"

namespace {

using covpack::Index;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitIo, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw CliError{kExitIo, "write failed for '" + path + "'"};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

// --gen random-rs:n,m,k,amax | vc:graphfile | setcover:specfile
covpack::NormalizedInstance generate_from_spec(const std::string& spec, std::uint64_t seed) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CliError{kExitUsage, "malformed --gen spec '" + spec + "'"};
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "random-rs") {
    const std::vector<std::string> parts = split(arg, ',');
    if (parts.size() != 4) {
      throw CliError{kExitUsage, "random-rs expects n,m,k,amax"};
    }
    try {
      const Index n = static_cast<Index>(std::stol(parts[0]));
      const Index m = static_cast<Index>(std::stol(parts[1]));
      const Index k = static_cast<Index>(std::stol(parts[2]));
      const double amax = std::stod(parts[3]);
      return covpack::gen_random_rs(n, m, k, amax, seed);
    } catch (const CliError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw CliError{kExitUsage, std::string("random-rs: ") + e.what()};
    } catch (const std::exception& e) {
      throw CliError{kExitUsage, std::string("malformed random-rs spec: ") + e.what()};
    }
  }
  if (kind == "vc") {
    const std::string text = read_file(arg);
    std::vector<std::pair<Index, Index>> edges;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream row(line);
      long u, v;
      if (!(row >> u)) continue;
      if (!(row >> v)) throw CliError{kExitIo, "graph line " + std::to_string(line_no) + ": expected two vertex ids"};
      edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
    }
    try {
      return covpack::gen_vertex_cover_lp(edges);
    } catch (const std::invalid_argument& e) {
      throw CliError{kExitIo, std::string("vc: ") + e.what()};
    }
  }
  if (kind == "setcover") {
    const std::string text = read_file(arg);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    Index element_count = -1;
    std::vector<std::vector<Index>> sets;
    while (std::getline(in, line)) {
      ++line_no;
      if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream row(line);
      if (element_count < 0) {
        long n;
        if (!(row >> n)) continue;
        element_count = static_cast<Index>(n);
        continue;
      }
      std::string tag;
      if (!(row >> tag)) continue;
      if (tag != "s") {
        throw CliError{kExitIo, "setcover line " + std::to_string(line_no) + ": expected 's <element ids...>'"};
      }
      std::vector<Index> members;
      long e;
      while (row >> e) members.push_back(static_cast<Index>(e));
      sets.push_back(std::move(members));
    }
    if (element_count < 0) throw CliError{kExitIo, "setcover spec: missing element count"};
    try {
      return covpack::gen_set_cover(element_count, sets);
    } catch (const std::invalid_argument& e) {
      throw CliError{kExitIo, std::string("setcover: ") + e.what()};
    }
  }
  throw CliError{kExitUsage, "unknown --gen kind '" + kind + "'"};
}

covpack::ParsedInstance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return covpack::parse_instance(text);
  } catch (const covpack::ParseError& e) {
    throw CliError{kExitIo, path + ": " + e.what()};
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitIo, path + ": " + e.what()};
  }
}

std::string vector_to_text(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += covpack::format_double(v[i]);
    out += '\n';
  }
  return out;
}

Eigen::VectorXd vector_from_file(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      try {
        values.push_back(covpack::parse_double(token, line_no, "value"));
      } catch (const covpack::ParseError& e) {
        throw CliError{kExitIo, path + ": " + e.what()};
      }
    }
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[i];
  return out;
}

ordered_json params_to_json(const covpack::Params& p) {
  ordered_json j;
  j["epsilon"] = p.epsilon;
  j["alpha"] = p.alpha;
  j["f"] = p.f;
  j["phase_limit"] = p.phase_limit;
  j["c_const"] = p.c_const;
  return j;
}

ordered_json stats_to_json(const covpack::InstanceStats& s) {
  ordered_json j;
  j["gamma_p"] = s.gamma_p;
  j["gamma_d"] = s.gamma_d;
  j["a_max"] = s.a_max;
  return j;
}

ordered_json round_stats_to_json(const covpack::RoundStats& s) {
  ordered_json j;
  j["phases"] = s.phases;
  j["rounds"] = s.rounds;
  j["messages"] = s.messages;
  j["max_payload_bits"] = s.max_payload_bits;
  j["bit_budget"] = s.bit_budget;
  j["phase_limit"] = s.phase_limit;
  return j;
}

struct CommonOptions {
  std::string instance_path;
  std::string gen_spec;
  double epsilon = 0.5;
  std::string mode = "both";
  std::uint64_t seed = 0;
  std::string format = "text";
  int bit_budget = covpack::kDefaultBitBudget;
  bool oracle = false;
  std::string out_prefix;
  std::string trace = "light";
};

double clamp_epsilon(double epsilon) {
  if (epsilon <= 0.0) throw CliError{kExitUsage, "--epsilon must be positive"};
  if (epsilon > 1.0) {
    std::cerr << "warning: epsilon > 1 clamped to 1\n";
    return 1.0;
  }
  return epsilon;
}

// Loads --instance or generates from --gen; exactly one must be given.
// General instances are reduced first; the map travels along.
struct LoadedInstance {
  covpack::NormalizedInstance normalized;
  std::optional<covpack::GeneralInstance> general;
  std::optional<covpack::NormalizationMap> map;
};

LoadedInstance acquire_instance(const CommonOptions& opt) {
  const bool have_path = !opt.instance_path.empty();
  const bool have_gen = !opt.gen_spec.empty();
  if (have_path == have_gen) {
    throw CliError{kExitUsage, "exactly one of --instance and --gen is required"};
  }
  if (have_gen) {
    return LoadedInstance{generate_from_spec(opt.gen_spec, opt.seed), std::nullopt, std::nullopt};
  }
  covpack::ParsedInstance parsed = load_instance(opt.instance_path);
  if (std::holds_alternative<covpack::NormalizedInstance>(parsed)) {
    return LoadedInstance{std::get<covpack::NormalizedInstance>(std::move(parsed)),
                          std::nullopt, std::nullopt};
  }
  covpack::GeneralInstance general = std::get<covpack::GeneralInstance>(std::move(parsed));
  try {
    covpack::NormalizeResult reduced = covpack::normalize(general);
    return LoadedInstance{std::move(reduced.instance), std::move(general),
                          std::move(reduced.map)};
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitIo, opt.instance_path + ": " + e.what()};
  }
}

int cmd_solve(const CommonOptions& opt_in) {
  CommonOptions opt = opt_in;
  opt.epsilon = clamp_epsilon(opt.epsilon);
  if (opt.mode != "centralized" && opt.mode != "congest" && opt.mode != "both") {
    throw CliError{kExitUsage, "--mode must be centralized, congest or both"};
  }
  const covpack::TraceLevel level =
      opt.trace == "full" ? covpack::TraceLevel::kFull : covpack::TraceLevel::kLight;

  LoadedInstance loaded = acquire_instance(opt);
  const covpack::NormalizedInstance& inst = loaded.normalized;

  std::optional<covpack::RunResult> central;
  std::optional<covpack::DistributedRunResult> distributed;
  if (opt.mode == "centralized" || opt.mode == "both") {
    central = covpack::run(inst, opt.epsilon, level);
  }
  if (opt.mode == "congest" || opt.mode == "both") {
    distributed = covpack::run_distributed(inst, opt.epsilon, level, opt.bit_budget);
  }

  bool modes_agree = true;
  if (central && distributed) {
    modes_agree = covpack::bitwise_equal(central->solution.x, distributed->solution.x) &&
                  covpack::bitwise_equal(central->solution.y, distributed->solution.y);
  }

  const covpack::PrimalDualSolution& sol =
      central ? central->solution : distributed->solution;
  const covpack::Params params = central ? central->params : distributed->params;
  const covpack::Certificate cert = covpack::certify(inst, sol, opt.epsilon);

  std::optional<double> oracle_opt;
  bool oracle_ok = true;
  if (opt.oracle) {
    if (inst.elements() + inst.sets() > 12) {
      throw CliError{kExitUsage, "--oracle needs n_rows + n_cols <= 12"};
    }
    oracle_opt = covpack::exact_opt(inst);
    oracle_ok = cert.primal_obj <= (1.0 + opt.epsilon) * *oracle_opt + 1e-9 &&
                cert.dual_obj >= *oracle_opt / (1.0 + opt.epsilon) - 1e-9;
  }

  std::optional<covpack::PrimalDualSolution> original_sol;
  bool original_feasible = true;
  if (loaded.general) {
    original_sol = covpack::denormalize(sol, *loaded.map);
    original_feasible =
        covpack::check_primal_general(*loaded.general, original_sol->x,
                                      original_sol->saturated_columns).feasible &&
        covpack::check_dual_general(*loaded.general, original_sol->y).feasible;
  }

  std::optional<covpack::AuditReport> audit;
  if (level == covpack::TraceLevel::kFull) {
    const covpack::PhaseTrace& trace = central ? central->trace : distributed->trace;
    audit = covpack::audit_trace(trace, params, inst);
  }

  Index empty_columns = 0;
  for (Index j = 0; j < inst.sets(); ++j) {
    if (inst.matrix().col(j).empty()) ++empty_columns;
  }

  ordered_json report;
  report["instance"] = {{"n_rows", inst.elements()},
                        {"n_cols", inst.sets()},
                        {"nnz", inst.matrix().nnz()},
                        {"empty_cols", empty_columns}};
  report["instance"].update(stats_to_json(inst.stats()));
  report["params"] = params_to_json(params);
  report["mode"] = opt.mode;
  if (central) {
    report["centralized"] = {{"phases", central->trace.executed_phases}};
  }
  if (distributed) {
    report["congest"] = round_stats_to_json(distributed->stats);
  }
  if (central && distributed) report["modes_agree"] = modes_agree;
  report["certificate"] = covpack::to_json(cert);
  if (audit) report["audit"] = covpack::to_json(*audit);
  if (oracle_opt) {
    report["oracle"] = {{"exact_opt", *oracle_opt}, {"within_ratio", oracle_ok}};
  }
  if (original_sol) {
    report["original"] = {{"primal_obj", original_sol->primal_objective},
                          {"dual_obj", original_sol->dual_objective},
                          {"feasible", original_feasible},
                          {"saturated_columns", original_sol->saturated_columns}};
  }

  if (!opt.out_prefix.empty()) {
    if (!opt.gen_spec.empty()) {
      write_file(opt.out_prefix + ".instance", serialize_instance(inst));
    }
    write_file(opt.out_prefix + ".x", vector_to_text(sol.x));
    write_file(opt.out_prefix + ".y", vector_to_text(sol.y));
    write_file(opt.out_prefix + ".cert.json", covpack::to_json(cert).dump(2) + "\n");
    write_file(opt.out_prefix + ".report.json", report.dump(2) + "\n");
    if (audit) {
      write_file(opt.out_prefix + ".audit.json", covpack::to_json(*audit).dump(2) + "\n");
    }
    if (original_sol) {
      write_file(opt.out_prefix + ".orig.x", vector_to_text(original_sol->x));
      write_file(opt.out_prefix + ".orig.y", vector_to_text(original_sol->y));
    }
  }

  if (opt.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "instance: n=" << inst.elements() << " m=" << inst.sets()
              << " nnz=" << inst.matrix().nnz()
              << " gamma_p=" << covpack::format_double(inst.stats().gamma_p)
              << " gamma_d=" << covpack::format_double(inst.stats().gamma_d)
              << " a_max=" << covpack::format_double(inst.stats().a_max) << "\n";
    std::cout << "params: epsilon=" << covpack::format_double(params.epsilon)
              << " alpha=" << covpack::format_double(params.alpha)
              << " f=" << covpack::format_double(params.f)
              << " phase_limit=" << params.phase_limit
              << " c_const=" << covpack::format_double(params.c_const) << "\n";
    if (central) {
      std::cout << "centralized: phases=" << central->trace.executed_phases << "\n";
    }
    if (distributed) {
      const covpack::RoundStats& rs = distributed->stats;
      std::cout << "congest: phases=" << rs.phases << " rounds=" << rs.rounds
                << " messages=" << rs.messages
                << " max_payload_bits=" << rs.max_payload_bits
                << " bit_budget=" << rs.bit_budget << "\n";
    }
    if (central && distributed) {
      std::cout << "modes_agree: " << (modes_agree ? "true" : "false") << "\n";
    }
    std::cout << "certificate: valid=" << (cert.valid ? "true" : "false")
              << " primal_obj=" << covpack::format_double(cert.primal_obj)
              << " dual_obj=" << covpack::format_double(cert.dual_obj)
              << " ratio=" << covpack::format_double(cert.ratio) << "\n";
    if (oracle_opt) {
      std::cout << "oracle: exact_opt=" << covpack::format_double(*oracle_opt)
                << " within_ratio=" << (oracle_ok ? "true" : "false") << "\n";
    }
    if (audit) {
      std::cout << "audit: all_pass=" << (audit->all_pass ? "true" : "false") << "\n";
    }
    if (original_sol) {
      std::cout << "original: primal_obj=" << covpack::format_double(original_sol->primal_objective)
                << " dual_obj=" << covpack::format_double(original_sol->dual_objective)
                << " feasible=" << (original_feasible ? "true" : "false") << "\n";
    }
  }

  const bool ok = cert.valid && modes_agree && oracle_ok && original_feasible &&
                  (!audit || audit->all_pass);
  return ok ? kExitOk : kExitInvalid;
}

int cmd_normalize(const std::string& instance_path, const std::string& out_prefix) {
  covpack::ParsedInstance parsed = load_instance(instance_path);
  if (!std::holds_alternative<covpack::GeneralInstance>(parsed)) {
    throw CliError{kExitUsage, "normalize expects a general-form instance"};
  }
  const covpack::GeneralInstance& general = std::get<covpack::GeneralInstance>(parsed);
  covpack::NormalizeResult reduced = [&] {
    try {
      return covpack::normalize(general);
    } catch (const std::invalid_argument& e) {
      throw CliError{kExitIo, instance_path + ": " + e.what()};
    }
  }();

  write_file(out_prefix + ".fcp", covpack::serialize_instance(reduced.instance));
  std::string map_text = "scale_min " + covpack::format_double(reduced.map.scale_min) + "\n";
  const auto append_indices = [&map_text](const char* name, const std::vector<Index>& v) {
    map_text += name;
    for (Index i : v) {
      map_text += ' ';
      map_text += std::to_string(i);
    }
    map_text += '\n';
  };
  append_indices("removed_rows", reduced.map.removed_rows);
  append_indices("forced_columns", reduced.map.forced_columns);
  append_indices("rows_deleted_by_forced_columns", reduced.map.rows_deleted_by_forced_columns);
  write_file(out_prefix + ".map", map_text);
  std::cout << "normalized: n=" << reduced.instance.elements()
            << " m=" << reduced.instance.sets()
            << " scale_min=" << covpack::format_double(reduced.map.scale_min) << "\n";
  return kExitOk;
}

int cmd_generate(const std::string& gen_spec, std::uint64_t seed, const std::string& out_path) {
  const covpack::NormalizedInstance inst = generate_from_spec(gen_spec, seed);
  const std::string text = covpack::serialize_instance(inst);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& x_path,
               const std::string& y_path, double epsilon, const std::string& format,
               bool oracle) {
  const double eps = clamp_epsilon(epsilon);
  covpack::ParsedInstance parsed = load_instance(instance_path);
  if (!std::holds_alternative<covpack::NormalizedInstance>(parsed)) {
    throw CliError{kExitUsage, "verify expects a normalized instance"};
  }
  const covpack::NormalizedInstance& inst = std::get<covpack::NormalizedInstance>(parsed);
  covpack::PrimalDualSolution sol;
  sol.x = vector_from_file(x_path);
  sol.y = vector_from_file(y_path);
  if (sol.x.size() != inst.sets() || sol.y.size() != inst.elements()) {
    throw CliError{kExitIo, "solution dimensions do not match the instance"};
  }
  sol.primal_objective = covpack::vec_sum(sol.x);
  sol.dual_objective = covpack::vec_sum(sol.y);
  const covpack::Certificate cert = covpack::certify(inst, sol, eps);

  bool oracle_ok = true;
  std::optional<double> oracle_opt;
  if (oracle) {
    if (inst.elements() + inst.sets() > 12) {
      throw CliError{kExitUsage, "--oracle needs n_rows + n_cols <= 12"};
    }
    oracle_opt = covpack::exact_opt(inst);
    oracle_ok = cert.primal_obj <= (1.0 + eps) * *oracle_opt + 1e-9 &&
                cert.dual_obj >= *oracle_opt / (1.0 + eps) - 1e-9;
  }

  if (format == "json") {
    ordered_json j = covpack::to_json(cert);
    if (oracle_opt) j["exact_opt"] = *oracle_opt;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "certificate: valid=" << (cert.valid ? "true" : "false")
              << " primal_feasible=" << (cert.primal_feasible ? "true" : "false")
              << " dual_feasible=" << (cert.dual_feasible ? "true" : "false")
              << " ratio=" << covpack::format_double(cert.ratio) << "\n";
    if (oracle_opt) {
      std::cout << "oracle: exact_opt=" << covpack::format_double(*oracle_opt)
                << " within_ratio=" << (oracle_ok ? "true" : "false") << "\n";
    }
  }
  return cert.valid && oracle_ok ? kExitOk : kExitInvalid;
}

int cmd_bench(const std::string& gen_spec, const std::string& epsilons_csv,
              std::uint64_t seed_base, int seed_count, const std::string& format,
              const std::string& out_path) {
  if (seed_count < 1) throw CliError{kExitUsage, "--seeds must be >= 1"};
  std::vector<double> epsilons;
  for (const std::string& tok : split(epsilons_csv, ',')) {
    if (tok.empty()) continue;
    try {
      epsilons.push_back(clamp_epsilon(std::stod(tok)));
    } catch (const CliError&) {
      throw;
    } catch (const std::exception&) {
      throw CliError{kExitUsage, "malformed --epsilons list"};
    }
  }
  if (epsilons.empty()) throw CliError{kExitUsage, "--epsilons must name at least one value"};

  struct Row {
    std::uint64_t seed;
    double epsilon;
    covpack::InstanceStats stats;
    covpack::Params params;
    covpack::RoundStats rs;
    Index n, m;
  };
  std::vector<Row> rows;
  for (int t = 0; t < seed_count; ++t) {
    const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(t);
    const covpack::NormalizedInstance inst = generate_from_spec(gen_spec, seed);
    for (double eps : epsilons) {
      covpack::DistributedRunResult res =
          covpack::run_distributed(inst, eps, covpack::TraceLevel::kLight);
      rows.push_back(Row{seed, eps, inst.stats(), res.params, res.stats,
                         inst.elements(), inst.sets()});
    }
  }

  std::string out;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json j;
      j["seed"] = r.seed;
      j["epsilon"] = r.epsilon;
      j["n_rows"] = r.n;
      j["n_cols"] = r.m;
      j.update(stats_to_json(r.stats));
      j.update(params_to_json(r.params));
      j.update(round_stats_to_json(r.rs));
      j["round_bound"] = 4 * r.rs.phase_limit;
      arr.push_back(j);
    }
    out = arr.dump(2) + "\n";
  } else {
    out = "seed,epsilon,n_rows,n_cols,gamma_p,gamma_d,a_max,alpha,f,c_const,"
          "phase_limit,phases,rounds,messages,max_payload_bits,round_bound\n";
    for (const Row& r : rows) {
      out += std::to_string(r.seed) + ',' + covpack::format_double(r.epsilon) + ',' +
             std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
             covpack::format_double(r.stats.gamma_p) + ',' +
             covpack::format_double(r.stats.gamma_d) + ',' +
             covpack::format_double(r.stats.a_max) + ',' +
             covpack::format_double(r.params.alpha) + ',' +
             covpack::format_double(r.params.f) + ',' +
             covpack::format_double(r.params.c_const) + ',' +
             std::to_string(r.params.phase_limit) + ',' + std::to_string(r.rs.phases) + ',' +
             std::to_string(r.rs.rounds) + ',' + std::to_string(r.rs.messages) + ',' +
             std::to_string(r.rs.max_payload_bits) + ',' +
             std::to_string(4 * r.rs.phase_limit) + '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << out;
  } else {
    write_file(out_path, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covpack: (1+eps)-approximate fractional covering/packing solver "
               "with a CONGEST-model round simulator"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string out_path;
  std::string x_path, y_path;
  std::string epsilons_csv = "1,0.5,0.25";
  int seed_count = 1;

  CLI::App* solve = app.add_subcommand("solve", "solve an instance and certify the result");
  solve->add_option("--instance", opt.instance_path, "instance file");
  solve->add_option("--gen", opt.gen_spec, "generator spec (random-rs:n,m,k,amax | vc:file | setcover:file)");
  solve->add_option("--epsilon", opt.epsilon, "approximation parameter in (0, 1]")->required();
  solve->add_option("--mode", opt.mode, "centralized | congest | both");
  solve->add_option("--seed", opt.seed, "generator seed");
  solve->add_option("--format", opt.format, "text | json");
  solve->add_option("--bit-budget", opt.bit_budget, "per-message payload budget in bits");
  solve->add_flag("--oracle", opt.oracle, "cross-check against the exact optimum (tiny instances)");
  solve->add_option("--out", opt.out_prefix, "prefix for .x/.y/.cert.json/.report.json outputs");
  solve->add_option("--trace", opt.trace, "light | full");

  CLI::App* normalize = app.add_subcommand("normalize", "reduce a general instance to normal form");
  normalize->add_option("--instance", opt.instance_path, "general instance file")->required();
  normalize->add_option("--out", opt.out_prefix, "prefix for .fcp/.map outputs")->required();

  CLI::App* generate = app.add_subcommand("generate", "emit a generated instance");
  generate->add_option("--gen", opt.gen_spec, "generator spec")->required();
  generate->add_option("--seed", opt.seed, "generator seed");
  generate->add_option("--out", out_path, "output path (stdout when absent)");

  CLI::App* verify = app.add_subcommand("verify", "certify an existing solution");
  verify->add_option("--instance", opt.instance_path, "normalized instance file")->required();
  verify->add_option("--x", x_path, "primal vector file")->required();
  verify->add_option("--y", y_path, "dual vector file")->required();
  verify->add_option("--epsilon", opt.epsilon, "claimed approximation parameter")->required();
  verify->add_option("--format", opt.format, "text | json");
  verify->add_flag("--oracle", opt.oracle, "cross-check against the exact optimum");

  CLI::App* bench = app.add_subcommand("bench", "round-complexity sweep over epsilon and seeds");
  bench->add_option("--gen", opt.gen_spec, "generator spec")->required();
  bench->add_option("--epsilons", epsilons_csv, "comma-separated epsilon values");
  bench->add_option("--seed", opt.seed, "base seed");
  bench->add_option("--seeds", seed_count, "number of seeds");
  bench->add_option("--format", opt.format, "text (csv) | json");
  bench->add_option("--out", out_path, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (normalize->parsed()) return cmd_normalize(opt.instance_path, opt.out_prefix);
    if (generate->parsed()) return cmd_generate(opt.gen_spec, opt.seed, out_path);
    if (verify->parsed()) {
      return cmd_verify(opt.instance_path, x_path, y_path, opt.epsilon, opt.format, opt.oracle);
    }
    if (bench->parsed()) {
      return cmd_bench(opt.gen_spec, epsilons_csv, opt.seed, seed_count, opt.format, out_path);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
