// papc: construct, mutate, analyze, complete and verify incidence structures.
//
// construct and delete write an incidence file (stdout or --out) so they can be
// piped; every other command writes one JSON report. Exit codes: 0 success,
// 1 negative result, 2 usage or input error, 3 node budget exhausted.

#include <papc/bounds.hpp>
#include <papc/completion.hpp>
#include <papc/constructions.hpp>
#include <papc/incidence.hpp>
#include <papc/inversive.hpp>
#include <papc/io.hpp>
#include <papc/oracle.hpp>
#include <papc/parallelism.hpp>
#include <papc/report.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using papc::report::Json;

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

struct Outcome {
  int code = kOk;
  Json report;
};

struct Common {
  std::string in = "-";
  std::string out;
  std::string report_path;
  bool pretty = false;
  bool strict = false;
  unsigned threads = 1;
};

int exit_for(papc::ErrorCode code) {
  using papc::ErrorCode;
  switch (code) {
    case ErrorCode::BudgetExhausted: return kBudget;
    case ErrorCode::NotCompletable:
    case ErrorCode::DerivedNotCompletable:
    case ErrorCode::NoClauseSatisfied:
    case ErrorCode::ConditionsNotMet:
    case ErrorCode::GlueInconsistent:
    case ErrorCode::HypothesesNotMet:
    case ErrorCode::NotEquivalence:
    case ErrorCode::TooManyClasses:
    case ErrorCode::ResultNotADesign:
    case ErrorCode::RetriesExhausted: return kNegative;
    default: return kUsage;
  }
}

std::uint64_t node_budget() {
  if (const char* env = std::getenv("PAPC_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw papc::Error(papc::ErrorCode::InvalidInput, "PAPC_BUDGET must be a positive integer");
  }
  return papc::kDefaultNodeBudget;
}

papc::OracleOptions oracle_options(const Common& c) {
  papc::OracleOptions o;
  o.node_budget = node_budget();
  o.threads = c.threads;
  return o;
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw papc::Error(papc::ErrorCode::InvalidInput, "cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    fallback.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw papc::Error(papc::ErrorCode::InvalidInput, "cannot write " + path);
  f << text;
}

struct Loaded {
  papc::IncidenceStructure structure;
  Json input;
};

Loaded load(const Common& c) {
  auto parsed = papc::parse_incidence(read_all(c.in), c.strict);
  Json input{{"canonical", parsed.canonical}, {"warnings", parsed.warnings}};
  return {std::move(parsed.structure), std::move(input)};
}

std::string dump(const Json& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

// --- construct / delete ----------------------------------------------------

struct ConstructArgs {
  std::string kind;
  int order = 0;
  int dim = 3;
};

Outcome run_construct(const Common& c, const ConstructArgs& a) {
  papc::IncidenceStructure s;
  if (a.kind == "affine") s = papc::affine_plane(a.order);
  else if (a.kind == "projective") s = papc::projective_plane(a.order);
  else if (a.kind == "inversive") s = papc::miquelian_inversive_plane(a.order);
  else if (a.kind == "affine-space") s = papc::affine_space_line_design(a.order, a.dim);
  else if (a.kind == "baer") s = papc::baer_example(a.order);
  else s = papc::transversal_design(a.order);
  write_text(c.out, papc::serialize(s), std::cout);
  Json j = papc::report::envelope("construct");
  j["status"] = "ok";
  j["kind"] = a.kind;
  j["order"] = a.order;
  if (a.kind == "affine-space") j["dim"] = a.dim;
  j["structure"] = papc::report::structure_stats(s);
  return {kOk, j};
}

struct DeleteArgs {
  std::vector<std::size_t> blocks;
  std::optional<std::size_t> random;
  std::uint64_t seed = 0;
  bool keep_equivalence = false;
};

Outcome run_delete(const Common& c, const DeleteArgs& a) {
  auto in = load(c);
  papc::IncidenceStructure s;
  if (a.random)
    s = papc::random_deletion(in.structure, *a.random, a.seed, a.keep_equivalence);
  else
    s = papc::delete_blocks(in.structure, a.blocks);
  write_text(c.out, papc::serialize(s), std::cout);
  Json j = papc::report::envelope("delete");
  j["status"] = "ok";
  j["input"] = in.input;
  j["deleted"] = in.structure.num_blocks() - s.num_blocks();
  if (a.random) j["seed"] = a.seed;
  j["structure"] = papc::report::structure_stats(s);
  return {kOk, j};
}

// --- analyze ---------------------------------------------------------------

Json analyze_pap(const papc::IncidenceStructure& s, std::size_t n) {
  using namespace papc;
  Json j;
  const auto pc = classify_parallelism(s);
  j["parallelism"] = report::to_json(pc);

  std::map<std::size_t, std::size_t> unjoined;
  for (Point p = 0; p < s.num_points(); ++p) ++unjoined[unjoined_set(s, p).count()];
  j["unjoined_histogram"] = report::histogram(unjoined, "unjoined");

  try {
    j["structure_bounds"] = report::to_json(structure_bounds_check(s));
    j["structure_bounds"]["applicable"] = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionViolated) throw;
    j["structure_bounds"] = {{"applicable", false}, {"reason", e.what()}};
  }

  const auto nn = static_cast<std::int64_t>(n);
  const auto b = static_cast<std::int64_t>(s.num_blocks());
  j["bounds"] = report::to_json(bound_report(nn));
  j["line_count"] = {{"b", b},
                     {"exceeds_g_minus_one", exceeds(b, nn, Threshold::GMinusOne)},
                     {"exceeds_root_n_threshold", exceeds(b, nn, Threshold::MaxGRootN)},
                     {"exceeds_f_threshold", exceeds(b, nn, Threshold::MaxGF)}};

  if (pc.is_equivalence) {
    const auto ext = class_point_extension(s);
    j["degree_certificate"] = report::to_json(degree_certificate(ext.structure, nn, ext.context));
    const auto gdd = extremal_gdd_check(s);
    Json g{{"applicable", gdd.applicable}, {"f0", gdd.f0}};
    if (gdd.applicable) {
      g["group_size"] = gdd.group_size;
      g["group_count"] = gdd.group_count;
      g["dual_is_gdd"] = gdd.groups.has_value();
    }
    j["extremal_gdd"] = g;
  }
  return j;
}

Outcome run_analyze(const Common& c) {
  using namespace papc;
  auto in = load(c);
  const auto& s = in.structure;
  Json j = report::envelope("analyze");
  j["status"] = "ok";
  j["input"] = in.input;
  j["structure"] = report::structure_stats(s);
  if (auto n = pap_order(s)) {
    j["pap"] = analyze_pap(s, *n);
  } else {
    j["pap"] = nullptr;
  }
  try {
    const auto shape = inversive_shape(s);
    Json inv{{"n", shape.n}, {"d", shape.d}};
    if (shape.d == 2) {
      Json clauses = Json::array();
      for (const auto& clause : router_clauses(s))
        clauses.push_back(clause ? Json(std::string(to_string(*clause))) : Json(nullptr));
      inv["router_clauses"] = clauses;
    }
    j["inversive"] = inv;
  } catch (const Error&) {
    j["inversive"] = nullptr;
  }
  return {kOk, j};
}

// --- complete ---------------------------------------------------------------

Outcome run_complete(const Common& c, const std::string& method, const std::string& emit) {
  using namespace papc;
  auto in = load(c);
  const auto& s = in.structure;
  Json j = report::envelope("complete");
  j["input"] = in.input;
  j["structure"] = report::structure_stats(s);
  j["method_requested"] = method;
  const auto options = oracle_options(c);

  std::optional<CompletionResult> result;
  int code = kOk;
  auto record_attempt = [&](PapAttempt attempt) {
    j["route"] = std::string(to_string(attempt.route));
    j["theorem_backed"] = attempt.theorem_backed;
    j["nodes"] = attempt.nodes;
    j["certificate"] = attempt.certificate;
    switch (attempt.status) {
      case AttemptStatus::Completed: result = std::move(attempt.result); break;
      case AttemptStatus::NotCompletable: code = kNegative; break;
      case AttemptStatus::BudgetExhausted: code = kBudget; break;
    }
  };

  if (method == "auto") {
    record_attempt(attempt_complete_pap(s, options));
  } else if (method == "projective") {
    record_attempt(attempt_complete_projective(s, options));
  } else if (method == "low-valency") {
    j["route"] = "low-valency";
    result = complete_low_valency(s);
    j["certificate"] = result->certificate;
  } else {
    j["route"] = "oracle";
    const auto shape = line_design_shape(s);
    const DesignParams params{2, static_cast<int>(shape.v), static_cast<int>(shape.n), 1};
    const auto outcome = oracle_complete(s, params, options);
    j["nodes"] = outcome.nodes;
    if (outcome.first_completion) {
      result = outcome.first_completion;
      j["certificate"] = result->certificate;
    } else if (outcome.budget_exhausted) {
      code = kBudget;
      j["certificate"] = {"oracle hit the node budget after " + std::to_string(outcome.nodes) + " nodes"};
    } else {
      code = kNegative;
      j["certificate"] = {"oracle exhausted, 0 completions (" + std::to_string(outcome.nodes) + " nodes)"};
    }
  }

  if (result) {
    const auto shape = line_design_shape(result->completed);
    const DesignParams params{2, static_cast<int>(shape.v), static_cast<int>(shape.n), 1};
    const bool verified = is_design(result->completed, params);
    j["result"] = report::to_json(*result);
    j["verified_design"] = verified;
    j["status"] = verified ? "completed" : "invalid";
    if (!verified) code = kNegative;
    if (!emit.empty()) write_text(emit, serialize(result->completed), std::cout);
  } else {
    j["result"] = nullptr;
    j["status"] = code == kBudget ? "budget-exhausted" : "not-completable";
  }
  return {code, j};
}

Outcome run_complete_inversive(const Common& c, const std::string& method, const std::string& emit) {
  using namespace papc;
  auto in = load(c);
  const auto& s = in.structure;
  Json j = report::envelope("complete-inversive");
  j["input"] = in.input;
  j["structure"] = report::structure_stats(s);
  j["method_requested"] = method;
  InversiveOptions options;
  options.oracle = oracle_options(c);
  options.threads = c.threads;
  const auto shape = inversive_shape(s);
  const auto result = method == "router" ? router_completion(s, options) : glue_completion(s, options);
  const bool verified = is_design(result.completed, {3, static_cast<int>(shape.v), static_cast<int>(shape.n + 1), 1});
  j["status"] = verified ? "completed" : "invalid";
  j["result"] = report::to_json(result);
  j["verified_design"] = verified;
  if (!emit.empty()) write_text(emit, serialize(result.completed), std::cout);
  return {verified ? kOk : kNegative, j};
}

// --- oracle / bounds / verify -------------------------------------------------

struct OracleArgs {
  int t = 2;
  int v = 0;
  int k = 0;
  int lambda = 1;
  std::string mode = "first";
  std::optional<std::uint64_t> limit;
};

Outcome run_oracle(const Common& c, const OracleArgs& a, const std::string& emit) {
  using namespace papc;
  auto in = load(c);
  const auto& s = in.structure;
  const DesignParams params{a.t, a.v, a.k, a.lambda};
  if (!params.valid() || static_cast<std::size_t>(a.v) != s.num_points())
    throw Error(ErrorCode::InvalidInput, "design parameters do not match the input");
  auto options = oracle_options(c);
  options.mode = a.mode == "count" ? OracleMode::CountAll : OracleMode::First;
  options.limit = a.limit;
  const auto outcome = oracle_complete(s, params, options);

  Json j = report::envelope("oracle");
  j["input"] = in.input;
  j["params"] = {{"t", a.t}, {"v", a.v}, {"k", a.k}, {"lambda", a.lambda}};
  j["mode"] = a.mode;
  j["outcome"] = report::to_json(outcome);
  int code = kOk;
  if (outcome.budget_exhausted) code = kBudget;
  else if (outcome.completions_found == 0) code = kNegative;
  j["status"] = code == kOk ? "ok" : code == kBudget ? "budget-exhausted" : "no-completion";
  if (!emit.empty() && outcome.first_completion)
    write_text(emit, serialize(outcome.first_completion->completed), std::cout);
  return {code, j};
}

Outcome run_bounds(std::int64_t n) {
  Json j = papc::report::envelope("bounds");
  j["status"] = "ok";
  j["bounds"] = papc::report::to_json(papc::bound_report(n));
  return {kOk, j};
}

Outcome run_verify(const Common& c, const std::string& spec_text) {
  using namespace papc;
  std::vector<int> p;
  std::stringstream ss(spec_text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      p.push_back(std::stoi(part, &used));
      if (used != part.size()) p.clear();
    } catch (const std::exception&) {
      p.clear();
    }
    if (p.empty()) break;
  }
  if (p.size() != 4) throw Error(ErrorCode::InvalidInput, "--design expects T,V,K,L");
  const DesignParams params{p[0], p[1], p[2], p[3]};
  if (!params.valid()) throw Error(ErrorCode::InvalidInput, "invalid design parameters");
  auto in = load(c);
  const bool full = is_design(in.structure, params);
  const bool partial = is_partial_design(in.structure, params);
  Json j = report::envelope("verify");
  j["input"] = in.input;
  j["params"] = {{"t", p[0]}, {"v", p[1]}, {"k", p[2]}, {"lambda", p[3]}};
  j["structure"] = report::structure_stats(in.structure);
  j["is_design"] = full;
  j["is_partial_design"] = partial;
  j["status"] = full ? "ok" : "not-a-design";
  return {full ? kOk : kNegative, j};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Completion of partial affine planes, 2-designs and inversive planes"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool has_input) {
    if (has_input) {
      sub->add_option("--in", common.in, "Input incidence file ('-' for stdin)");
      sub->add_flag("--strict", common.strict, "Reject non-canonical input");
    }
    sub->add_option("--out", common.out, "Output path (default stdout)");
    sub->add_flag("--pretty", common.pretty, "Indent the JSON report");
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  };

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Write a classical structure");
  c_construct->add_option("kind", construct.kind)
      ->required()
      ->check(CLI::IsMember({"affine", "projective", "inversive", "affine-space", "baer", "td"}));
  c_construct->add_option("--order", construct.order, "Order q")->required();
  c_construct->add_option("--dim", construct.dim, "Dimension for affine-space")->check(CLI::Range(2, 15));
  c_construct->add_option("--report", common.report_path, "Write a JSON report here");
  add_common(c_construct, false);

  DeleteArgs del;
  auto* c_delete = app.add_subcommand("delete", "Remove blocks");
  auto* o_blocks = c_delete->add_option("--blocks", del.blocks, "Block indices to remove")->delimiter(',');
  auto* o_random = c_delete->add_option("--random", del.random, "Remove this many random blocks");
  o_blocks->excludes(o_random);
  c_delete->add_option("--seed", del.seed, "Seed for --random");
  c_delete->add_flag("--keep-equivalence", del.keep_equivalence, "Redraw until parallelism stays an equivalence");
  c_delete->add_option("--report", common.report_path, "Write a JSON report here");
  add_common(c_delete, true);

  auto* c_analyze = app.add_subcommand("analyze", "Report valencies, parallelism and bounds");
  add_common(c_analyze, true);

  std::string method = "auto";
  std::string emit;
  auto* c_complete = app.add_subcommand("complete", "Complete a partial affine plane or 2-(n^d,n,1) design");
  c_complete->add_option("--method", method)->check(CLI::IsMember({"auto", "low-valency", "projective", "oracle"}));
  c_complete->add_option("--emit", emit, "Write the completed structure here");
  add_common(c_complete, true);

  std::string inv_method = "glue";
  auto* c_inversive = app.add_subcommand("complete-inversive", "Complete a partial 3-(n^d+1,n+1,1) design");
  c_inversive->add_option("--method", inv_method)->check(CLI::IsMember({"glue", "router"}));
  c_inversive->add_option("--emit", emit, "Write the completed structure here");
  add_common(c_inversive, true);

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Exhaustive completion search");
  c_oracle->add_option("--t", oracle.t)->required();
  c_oracle->add_option("--v", oracle.v)->required();
  c_oracle->add_option("--k", oracle.k)->required();
  c_oracle->add_option("--lambda", oracle.lambda)->required();
  c_oracle->add_option("--mode", oracle.mode)->check(CLI::IsMember({"first", "count"}));
  c_oracle->add_option("--limit", oracle.limit, "Stop counting at this many completions");
  c_oracle->add_option("--emit", emit, "Write the first completion here");
  add_common(c_oracle, true);

  std::int64_t bound_n = 0;
  auto* c_bounds = app.add_subcommand("bounds", "Line-count thresholds for order n");
  c_bounds->add_option("--n", bound_n)->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 30));
  add_common(c_bounds, false);

  std::string design;
  auto* c_verify = app.add_subcommand("verify", "Check the design property");
  c_verify->add_option("--design", design, "T,V,K,L")->required();
  add_common(c_verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const bool writes_structure = name == "construct" || name == "delete";
  if (name == "delete" && !del.random && del.blocks.empty() && !sub->count("--blocks")) {
    std::cerr << "delete: one of --blocks or --random is required\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (name == "construct") outcome = run_construct(common, construct);
    else if (name == "delete") outcome = run_delete(common, del);
    else if (name == "analyze") outcome = run_analyze(common);
    else if (name == "complete") outcome = run_complete(common, method, emit);
    else if (name == "complete-inversive") outcome = run_complete_inversive(common, inv_method, emit);
    else if (name == "oracle") outcome = run_oracle(common, oracle, emit);
    else if (name == "bounds") outcome = run_bounds(bound_n);
    else outcome = run_verify(common, design);
  } catch (const papc::Error& e) {
    outcome.code = exit_for(e.code());
    outcome.report = papc::report::envelope(name);
    outcome.report["status"] = "error";
    outcome.report["error"] = {{"code", std::string(papc::to_string(e.code()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    outcome.code = kUsage;
    outcome.report = papc::report::envelope(name);
    outcome.report["status"] = "error";
    outcome.report["error"] = {{"code", "InvalidInput"}, {"message", e.what()}};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.report["exit_code"] = outcome.code;
  outcome.report["timing"] = {{"wall_seconds", seconds}};

  try {
    const auto text = dump(outcome.report, common.pretty);
    if (writes_structure) {
      if (!common.report_path.empty())
        write_text(common.report_path, text, std::cout);
      else if (outcome.code != kOk)
        std::cerr << text;
    } else {
      write_text(common.out, text, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return outcome.code;
}
