#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fairslice/io.hpp"

namespace {

using namespace fairslice;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInvariant = 4;

int log_level() {
  const char* v = std::getenv("FAIRSLICE_LOG");
  return v ? std::atoi(v) : 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[fairslice] " << msg << "\n";
}

void emit(const nlohmann::json& j, const std::string& path) {
  std::string s = to_stable_string(j);
  if (path.empty() || path == "-") {
    std::cout << s << "\n";
  } else {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file '" + path + "'");
    out << s << "\n";
  }
}

std::vector<TwoPiecePreference> two_piece_players(const Instance& inst) {
  std::vector<TwoPiecePreference> prefs;
  for (const auto& p : inst.players) {
    if (!p.is_two_piece())
      throw std::invalid_argument("this subcommand needs two-piece players");
    prefs.push_back(p.two_piece());
  }
  return prefs;
}

std::vector<DemandFn> instance_demands(const Instance& inst) {
  std::vector<DemandFn> demands;
  for (const auto& p : inst.players) {
    if (p.is_two_piece())
      demands.push_back(make_two_piece_demand(p.two_piece()));
    else if (p.lazy)
      demands.push_back(make_additive_cost_demand(p.additive()));
    else
      demands.push_back(make_additive_demand(p.additive()));
  }
  return demands;
}

/// Oracle that asks a person on stdin instead of reading a file.
class StdinSession : public OracleSession {
 public:
  explicit StdinSession(int n) : n_(n) {}
  int players() const override { return n_; }

 protected:
  Answer answer(const Query& q) override {
    std::cout << "player " << q.player << ", " << to_string(q.kind);
    if (q.kind != QueryKind::FirstIndifference) std::cout << " at " << q.point;
    if (q.kind == QueryKind::Evaluate)
      std::cout << "? [L/R/B] " << std::flush;
    else
      std::cout << "? [point or 'none'] " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw InputError("stdin closed mid-protocol");
    if (q.kind == QueryKind::Evaluate) {
      if (line == "L") return Side::Left;
      if (line == "R") return Side::Right;
      if (line == "B") return Side::Both;
      throw InputError("expected L, R or B");
    }
    if (line == "none") return std::optional<double>{};
    try {
      return std::optional<double>{std::stod(line)};
    } catch (const std::exception&) {
      throw InputError("expected a number or 'none'");
    }
  }

 private:
  int n_;
};

struct Groups {
  int k1 = -1;
  int k2 = -1;
};

Groups parse_groups(const std::string& spec) {
  Groups g;
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw InputError("expected group sizes as k1,k2");
  try {
    g.k1 = std::stoi(spec.substr(0, comma));
    g.k2 = std::stoi(spec.substr(comma + 1));
  } catch (const std::exception&) {
    throw InputError("expected group sizes as k1,k2");
  }
  if (g.k1 < 0 || g.k2 < 0) throw InputError("group sizes must be nonnegative");
  return g;
}

int cmd_protocol(const std::string& algo, const std::string& instance_path, int k1,
                 bool interactive, int interactive_n, const std::string& out_path,
                 const std::string& transcript_path) {
  std::vector<TwoPiecePreference> prefs;
  std::unique_ptr<OracleSession> session;
  TwoPieceSession* file_session = nullptr;
  if (interactive) {
    if (interactive_n < 1) throw std::invalid_argument("--players must be at least 1");
    session = std::make_unique<StdinSession>(interactive_n);
  } else {
    Instance inst = load_instance(instance_path);
    prefs = two_piece_players(inst);
    auto owned = std::make_unique<TwoPieceSession>(prefs);
    file_session = owned.get();
    session = std::move(owned);
  }

  ProtocolReport report;
  if (algo == "singleton-first") {
    report = singleton_first(*session);
  } else if (algo == "singleton-last") {
    report = singleton_last(*session);
  } else if (algo == "monotone-marks") {
    if (!file_session)
      throw std::invalid_argument("monotone-marks needs explicit preferences, not --interactive");
    report = monotone_marks(*file_session, k1);
  } else {
    throw InputError("unknown algorithm '" + algo + "'");
  }
  log_info("protocol finished after " + std::to_string(report.query_count) + " queries");

  nlohmann::json j = protocol_report_to_json(report);
  if (!prefs.empty()) {
    std::vector<DemandFn> demands;
    for (const auto& p : prefs) demands.push_back(make_two_piece_demand(p));
    EnvyReport envy = verify_envy_free(report.assignment, demands);
    j["envy_free"] = envy.envy_free;
    if (!envy.envy_free) {
      emit(j, out_path);
      throw InvariantError("protocol output failed envy verification");
    }
  }
  emit(j, out_path);
  if (!transcript_path.empty()) {
    std::ofstream t(transcript_path);
    if (!t) throw InputError("cannot write transcript file '" + transcript_path + "'");
    write_transcript_jsonl(report.transcript, t);
  }
  return kExitOk;
}

int cmd_duel(const std::string& protocol_name, int n, const Groups& g, int max_queries,
             std::uint64_t seed, const std::string& out_path, const std::string& csv_path) {
  if (n < 2 || g.k1 + g.k2 != n) throw std::invalid_argument("group sizes must sum to n");
  if (std::min(g.k1, g.k2) < 2)
    throw std::invalid_argument("duels need both groups of size at least 2");
  DuelProtocol protocol = builtin_protocol(protocol_name, seed);
  DuelReport report = duel(protocol, n, g.k1, g.k2, max_queries);
  log_info("duel used " + std::to_string(report.query_count) + " queries");
  emit(duel_report_to_json(report), out_path);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw InputError("cannot write csv file '" + csv_path + "'");
    write_duel_csv(report, csv);
  }
  if (report.budget_exhausted) return kExitOk;
  if (!report.replay_consistent) throw InvariantError("transcript replay failed");
  if (report.envy_free) throw InvariantError("adversary produced an envy-free outcome");
  return kExitOk;
}

int cmd_chores(const std::string& instance_path, const Groups& g, double tolerance,
               const std::string& out_path) {
  Instance inst = load_instance(instance_path);
  std::vector<AdditivePiecewiseConstant> costs;
  for (const auto& p : inst.players) {
    if (p.is_two_piece() || !p.lazy)
      throw std::invalid_argument("chores need lazy additive players");
    costs.push_back(p.additive());
  }
  std::vector<int> sizes;
  if (g.k1 >= 0)
    sizes = {g.k1, g.k2};
  else if (!inst.group_sizes.empty())
    sizes = inst.group_sizes;
  else
    throw std::invalid_argument("no group sizes given (flag --k or instance group_sizes)");
  ChoreSolution sol = solve_chores(costs, sizes, tolerance);
  emit(chore_solution_to_json(sol), out_path);
  return kExitOk;
}

int cmd_mixed_demo(int n, int max_cuts, int grid, const std::string& out_path,
                   const std::string& csv_path) {
  auto utils = gen_counterexample(n);
  MinCutResult res = min_cut_search(utils, n - 1, 1, max_cuts, grid);
  nlohmann::json j = {{"n", n},
                      {"max_cuts", max_cuts},
                      {"grid_resolution", grid},
                      {"configurations_checked", res.configurations_checked},
                      {"found", res.collection.has_value()}};
  if (res.collection) {
    j["collection"] = collection_to_json(*res.collection);
    j["group_of"] = res.group_of;
  } else {
    j["message"] = "no EF assignment found";
  }
  emit(j, out_path);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw InputError("cannot write csv file '" + csv_path + "'");
    write_mixed_csv(utils, res, csv);
  }
  return kExitOk;
}

int cmd_mixed_ch(int n, double eps, int grid, const std::string& out_path) {
  auto utils = gen_counterexample(n);
  auto res = ch_then_pick(utils, n - 1, 1, eps, grid);
  nlohmann::json j = {{"n", n}, {"eps", eps}, {"grid_resolution", grid},
                      {"found", res.has_value()}};
  if (res) {
    j["collection"] = collection_to_json(res->collection);
    j["group_of"] = res->group_of;
    j["cut_count"] = res->collection.cut_count();
  }
  emit(j, out_path);
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& assignment_path,
               const std::string& out_path) {
  Instance inst = load_instance(instance_path);
  std::ifstream in(assignment_path);
  if (!in) throw InputError("cannot open assignment file '" + assignment_path + "'");
  nlohmann::json aj;
  try {
    in >> aj;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("assignment is not valid JSON: ") + e.what());
  }
  Assignment a = assignment_from_json(aj);
  validate_assignment(a, inst.n());
  EnvyReport envy = verify_envy_free(a, instance_demands(inst));
  nlohmann::json j = {{"envy_free", envy.envy_free}};
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& [player, group] : envy.violations)
    violations.push_back({{"player", player}, {"preferred_group", group}});
  j["violations"] = violations;
  emit(j, out_path);
  return envy.envy_free ? kExitOk : kExitPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairslice: envy-free division of a cake between two groups"};
  app.require_subcommand(1);

  // protocol
  auto* protocol = app.add_subcommand("protocol", "Run a finite query protocol");
  std::string algo = "singleton-first";
  std::string instance_path, out_path, transcript_path;
  int k1 = 1;
  bool interactive = false;
  int interactive_n = 0;
  protocol->add_option("--algo", algo, "singleton-first | singleton-last | monotone-marks");
  protocol->add_option("-i,--instance", instance_path, "instance JSON file");
  protocol->add_option("--k1", k1, "left group size (monotone-marks)");
  protocol->add_flag("--interactive", interactive, "answer queries on stdin");
  protocol->add_option("--players", interactive_n, "player count for --interactive");
  protocol->add_option("-o,--output", out_path, "report JSON path (default stdout)");
  protocol->add_option("--transcript", transcript_path, "transcript JSONL path");

  // duel
  auto* duel_cmd = app.add_subcommand("duel", "Run a protocol against the adversary");
  std::string duel_protocol = "binary-search", duel_groups = "2,2", duel_csv;
  std::string duel_out;
  int duel_n = 4, max_queries = 1000;
  std::uint64_t seed = 0;
  duel_cmd->add_option("--protocol", duel_protocol,
                       "marks | binary-search | random-prober | zero-query");
  duel_cmd->add_option("--n", duel_n, "player count");
  duel_cmd->add_option("--k", duel_groups, "group sizes k1,k2");
  duel_cmd->add_option("--max-queries", max_queries, "adversary budget");
  duel_cmd->add_option("--seed", seed, "seed for randomized protocols");
  duel_cmd->add_option("-o,--output", duel_out, "report JSON path (default stdout)");
  duel_cmd->add_option("--csv", duel_csv, "known-interval evolution CSV path");

  // chores
  auto* chores_cmd = app.add_subcommand("chores", "Divide an undesirable cake");
  std::string chores_instance, chores_groups, chores_out;
  double chores_tol = 1e-3;
  chores_cmd->add_option("-i,--instance", chores_instance, "instance JSON file")->required();
  chores_cmd->add_option("--k", chores_groups, "group sizes k1,k2");
  chores_cmd->add_option("--tolerance", chores_tol, "solver tolerance");
  chores_cmd->add_option("-o,--output", chores_out, "report JSON path (default stdout)");

  // mixed
  auto* mixed_cmd = app.add_subcommand("mixed", "Mixed-sign utility demos");
  auto* demo = mixed_cmd->add_subcommand("demo", "Cut-count search on the hard family");
  int mixed_n = 5, mixed_max_cuts = 1, mixed_grid = 200;
  std::string mixed_out, mixed_csv;
  demo->add_option("--n", mixed_n, "player count (>= 4)");
  demo->add_option("--max-cuts", mixed_max_cuts, "largest cut count to try");
  demo->add_option("--grid", mixed_grid, "grid resolution");
  demo->add_option("-o,--output", mixed_out, "report JSON path (default stdout)");
  demo->add_option("--csv", mixed_csv, "search outcome CSV path");
  auto* ch = mixed_cmd->add_subcommand("ch-then-pick", "Consensus halving, last player picks");
  int ch_n = 5, ch_grid = 400;
  double ch_eps = 0.02;
  std::string ch_out;
  ch->add_option("--n", ch_n, "player count (>= 4)");
  ch->add_option("--eps", ch_eps, "halving slack");
  ch->add_option("--grid", ch_grid, "grid resolution");
  ch->add_option("-o,--output", ch_out, "report JSON path (default stdout)");
  mixed_cmd->require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check an assignment for envy-freeness");
  std::string verify_instance, verify_assignment, verify_out;
  verify_cmd->add_option("-i,--instance", verify_instance, "instance JSON file")->required();
  verify_cmd->add_option("-a,--assignment", verify_assignment, "assignment JSON file")->required();
  verify_cmd->add_option("-o,--output", verify_out, "report JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*protocol)
      return cmd_protocol(algo, instance_path, k1, interactive, interactive_n, out_path,
                          transcript_path);
    if (*duel_cmd) return cmd_duel(duel_protocol, duel_n, parse_groups(duel_groups), max_queries,
                                   seed, duel_out, duel_csv);
    if (*chores_cmd) {
      Groups g;
      if (!chores_groups.empty()) g = parse_groups(chores_groups);
      return cmd_chores(chores_instance, g, chores_tol, chores_out);
    }
    if (*mixed_cmd) {
      if (*demo) return cmd_mixed_demo(mixed_n, mixed_max_cuts, mixed_grid, mixed_out, mixed_csv);
      return cmd_mixed_ch(ch_n, ch_eps, ch_grid, ch_out);
    }
    if (*verify_cmd) return cmd_verify(verify_instance, verify_assignment, verify_out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
