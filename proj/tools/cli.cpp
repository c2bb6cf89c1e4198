#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

#include "secset/errors.hpp"
#include "secset/instance.hpp"
#include "secset/qbf.hpp"
#include "secset/reductions.hpp"
#include "secset/security.hpp"
#include "secset/solver.hpp"

namespace secset::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

template <typename F>
auto parse_file(const std::string& path, F parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return parse_file(path, parse_instance); }

qbf::QSat2Formula load_formula(const std::string& path) { return parse_file(path, qbf::parse_qdnf); }

ReductionMap load_map(const std::string& path) { return parse_file(path, parse_map); }

VertexSet load_solution(const std::string& path, const Graph& g) {
  auto s = parse_file(path, [&](const std::string& text) { return parse_solution(text, g); });
  if (!s) throw InputError(path + ": solution file says NONE");
  return *s;
}

Graph unlabeled(std::size_t n) { return Graph::from_edges(n, {}); }

// `v <lit> ...` with one signed literal per existential variable.
qbf::Assignment parse_assignment(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  std::optional<qbf::Assignment> result;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    if (head != "v" || result) throw InputError("expected a single 'v <literals>' line", number);
    qbf::Assignment a;
    for (std::string tok; ls >> tok;) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("bad literal '" + tok + "'", number);
      }
      if (lit == 0) break;
      int var = lit < 0 ? -lit : lit;
      if (a.contains(var)) throw InputError("variable " + std::to_string(var) + " assigned twice", number);
      a.set(var, lit > 0);
    }
    result = std::move(a);
  }
  if (!result) throw InputError("missing 'v' line");
  return *result;
}

std::string format_assignment(const qbf::Assignment& a, const std::vector<int>& vars) {
  std::string body = a.format(vars);
  return body.empty() ? "v" : "v " + body;
}

std::string format_witness(const AttackWitness& w) {
  std::string out = "w";
  for (VertexId v : w.subset) out += ' ' + std::to_string(v + 1);
  return out + " | defenders=" + std::to_string(w.defenders) + " attackers=" + std::to_string(w.attackers);
}

std::string summary(const Instance& inst) {
  return "vertices=" + std::to_string(inst.graph.size()) + " edges=" + std::to_string(inst.graph.edge_count()) +
         " k=" + std::to_string(inst.k) + " variant=" + variant_of(inst).name();
}

Constraints parse_target(const std::string& token) {
  if (token == "plain") return Constraints::None;
  if (token == "f") return Constraints::Forbidden;
  if (token == "fn") return Constraints::ForbiddenNecessary;
  if (token == "fnc") return Constraints::ForbiddenNecessaryComplementary;
  throw InputError("unknown target variant '" + token + "' (use plain, f, fn or fnc)");
}

bool looks_like_qdnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a) || a == "c") continue;
    return a == "p" && (ls >> b) && b == "qdnf";
  }
  return false;
}

// Normalizes a formula for the reduction; constant formulas have nothing to reduce.
qbf::QSat2Formula normalized_or_refuse(const qbf::QSat2Formula& f) {
  auto result = qbf::normalize(f);
  if (std::holds_alternative<qbf::TriviallyTrue>(result))
    throw Refusal("formula normalizes to TRUE; the reduction needs a universal literal in every term");
  if (std::holds_alternative<qbf::TriviallyFalse>(result))
    throw Refusal("formula normalizes to FALSE; every term is contradictory");
  return std::get<qbf::Normalized>(result).formula;
}

struct Options {
  std::string path1, path2, path3, map_path, kind, target = "fnc";
  std::uint64_t max_candidates = SolverOptions{}.max_candidates;
  std::size_t max_subset = kDefaultOracleCap;
  std::size_t max_vars = qbf::kDefaultVariableCap;
  ReductionOptions reduction;
  bool oracle = false;
  bool all = false;
};

int cmd_check(const Options& o, std::ostream& out) {
  Instance inst = load_instance(o.path1);
  VertexSet s = load_solution(o.path2, inst.graph);
  std::optional<AttackWitness> w;
  if (o.oracle) {
    w = exhaustive_witness_oracle(inst.graph, s, o.max_subset);
  } else {
    w = find_attack_witness(inst.graph, s);
  }
  if (!w) {
    out << "SECURE\n";
    return kPositive;
  }
  out << "INSECURE\n" << format_witness(*w) << '\n';
  return kNegative;
}

int cmd_alliance(const Options& o, std::ostream& out) {
  Instance inst = load_instance(o.path1);
  VertexSet s = load_solution(o.path2, inst.graph);
  bool ok = is_defensive_alliance(inst.graph, s);
  out << (ok ? "ALLIANCE" : "NOT-ALLIANCE") << '\n';
  return ok ? kPositive : kNegative;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  Instance inst = load_instance(o.path1);
  SolverOptions opts{o.max_candidates};
  if (o.all) {
    auto all = enumerate_solutions(inst, opts);
    for (const auto& s : all) out << format_solution(s) << '\n';
    if (all.empty()) out << "s NONE\n";
    return all.empty() ? kNegative : kPositive;
  }
  SolveReport report = solve(inst, opts);
  if (!report.diagnostic.empty()) err << "c " << report.diagnostic << '\n';
  out << format_solution(report.result) << '\n';
  return report.result ? kPositive : kNegative;
}

int cmd_qbf_eval(const Options& o, std::ostream& out) {
  qbf::QSat2Formula f = load_formula(o.path1);
  auto normalized = qbf::normalize(f);
  if (auto* t = std::get_if<qbf::TriviallyTrue>(&normalized)) {
    out << "TRUE\n" << format_assignment(t->witness, f.existential) << '\n';
    return kPositive;
  }
  if (std::holds_alternative<qbf::TriviallyFalse>(normalized)) {
    out << "FALSE\n";
    return kNegative;
  }
  const auto& nf = std::get<qbf::Normalized>(normalized).formula;
  qbf::EvalResult r = qbf::eval_qsat2(nf, o.max_vars);
  if (!r.truth) {
    out << "FALSE\n";
    return kNegative;
  }
  out << "TRUE\n" << format_assignment(*r.witness, nf.existential) << '\n';
  return kPositive;
}

Reduction apply(ReductionKind kind, const Instance& inst, const Options& o) {
  switch (kind) {
    case ReductionKind::EssfncToEssfn: return reduce_essfnc_to_essfn(inst, o.reduction);
    case ReductionKind::EssfnToEssf: return reduce_essfn_to_essf(inst, o.reduction);
    case ReductionKind::EssfToSsf: return reduce_essf_to_ssf(inst, o.reduction);
    case ReductionKind::DropForbidden: return eliminate_forbidden(inst, o.reduction);
    case ReductionKind::Embed: return embed_trivial(inst, parse_target(o.target));
    case ReductionKind::Qsat2ToEssfnc: break;
  }
  throw Refusal("qsat2-essfnc takes a formula");
}

int cmd_reduce(const Options& o, std::ostream& out) {
  ReductionKind kind = parse_reduction_kind(o.kind);
  Reduction r = kind == ReductionKind::Qsat2ToEssfnc
                    ? reduce_qsat2_to_essfnc(normalized_or_refuse(load_formula(o.path1)), o.reduction)
                    : apply(kind, load_instance(o.path1), o);
  const std::string map_path = o.map_path.empty() ? o.path2 + ".map" : o.map_path;
  write_file(o.path2, serialize_instance(r.instance));
  write_file(map_path, serialize_map(r.map));
  out << to_string(kind) << ' ' << summary(r.instance) << '\n';
  return kPositive;
}

int cmd_lift(const Options& o, std::ostream& out) {
  ReductionMap map = load_map(o.path1);
  VertexSet lifted;
  if (map.kind == ReductionKind::Qsat2ToEssfnc) {
    lifted = lift_solution(map, parse_file(o.path2, parse_assignment));
  } else {
    lifted = lift_solution(map, load_solution(o.path2, unlabeled(map.input_vertices)));
  }
  std::string line = format_solution(lifted);
  if (o.path3.empty()) out << line << '\n';
  else write_file(o.path3, line);
  return kPositive;
}

int cmd_project(const Options& o, std::ostream& out) {
  ReductionMap map = load_map(o.path1);
  VertexSet s = load_solution(o.path2, unlabeled(map.provenance.size()));
  std::string line = map.kind == ReductionKind::Qsat2ToEssfnc
                         ? format_assignment(project_assignment(map, s), map.existential_vars)
                         : format_solution(project_solution(map, s));
  if (o.path3.empty()) out << line << '\n';
  else write_file(o.path3, line);
  return kPositive;
}

// Graph stages in chain order, starting from the narrowest one that accepts `inst`.
std::vector<ReductionKind> graph_stages(const Instance& inst) {
  const std::vector<ReductionKind> all = {ReductionKind::EssfncToEssfn, ReductionKind::EssfnToEssf,
                                          ReductionKind::EssfToSsf, ReductionKind::DropForbidden};
  const Constraints c = variant_of(inst).constraints;
  if (!inst.exact) {
    if (c == Constraints::ForbiddenNecessary || c == Constraints::ForbiddenNecessaryComplementary)
      throw Refusal("at-most instances with necessary vertices or pairs have no reduction stage");
    return {ReductionKind::DropForbidden};
  }
  std::size_t start = 0;
  if (c == Constraints::ForbiddenNecessary) start = 1;
  if (c == Constraints::Forbidden || c == Constraints::None) start = 2;
  return {all.begin() + static_cast<long>(start), all.end()};
}

int cmd_chain(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.path1);
  const fs::path dir(o.path2);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + o.path2 + "': " + ec.message());

  Instance current;
  std::size_t stage = 0;
  auto emit = [&](const Reduction& r) {
    ++stage;
    const std::string stem = std::to_string(stage) + "-" + to_string(r.map.kind);
    write_file(dir / (stem + ".ss"), serialize_instance(r.instance));
    write_file(dir / (stem + ".map"), serialize_map(r.map));
    out << "stage " << stage << ' ' << to_string(r.map.kind) << ' ' << summary(r.instance) << '\n';
    current = r.instance;
  };

  if (looks_like_qdnf(text)) {
    qbf::QSat2Formula f;
    try {
      f = qbf::parse_qdnf(text);
    } catch (const InputError& e) {
      throw InputError(o.path1 + ": " + e.what());
    }
    emit(reduce_qsat2_to_essfnc(normalized_or_refuse(f), o.reduction));
  } else {
    current = load_instance(o.path1);
  }
  for (ReductionKind kind : graph_stages(current)) {
    emit(apply(kind, current, o));
  }
  return kPositive;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure sets in graphs: verify, solve, evaluate QSAT2 and build hardness reductions"};
  app.name(args.empty() ? "secset" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  Options o;

  auto budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-vertices", o.reduction.max_vertices, "Cap on output vertices")->capture_default_str();
    sub->add_option("--max-edges", o.reduction.max_edges, "Cap on output edges")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "Decide whether a set is secure and print a witness");
  check->add_option("instance", o.path1)->required();
  check->add_option("solution", o.path2)->required();
  check->add_flag("--oracle", o.oracle, "Use literal subset enumeration instead of branch and bound");
  check->add_option("--max-subset", o.max_subset, "Largest set the --oracle enumeration accepts")
      ->capture_default_str();

  auto* alliance = app.add_subcommand("alliance", "Decide whether a set is a defensive alliance");
  alliance->add_option("instance", o.path1)->required();
  alliance->add_option("solution", o.path2)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Find a qualifying secure set");
  solve_cmd->add_option("instance", o.path1)->required();
  solve_cmd->add_option("--max-candidates", o.max_candidates, "Candidate-space budget")->capture_default_str();
  solve_cmd->add_flag("--all", o.all, "Print every qualifying set, by size then lexicographically");

  auto* qbf_cmd = app.add_subcommand("qbf-eval", "Evaluate an exists-forall 3-DNF formula");
  qbf_cmd->add_option("formula", o.path1)->required();
  qbf_cmd->add_option("--max-vars", o.max_vars, "Variable cap")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "Apply one reduction and write instance plus map");
  reduce->add_option("kind", o.kind,
                     "qsat2-essfnc, essfnc-essfn, essfn-essf, essf-ssf, drop-forbidden or embed")
      ->required();
  reduce->add_option("input", o.path1)->required();
  reduce->add_option("output", o.path2)->required();
  reduce->add_option("--map", o.map_path, "Map file (default: <output>.map)");
  reduce->add_option("--target", o.target, "Variant for embed: plain, f, fn or fnc")->capture_default_str();
  budget_flags(reduce);

  auto* lift = app.add_subcommand("lift", "Map an input solution (or assignment) through a map");
  lift->add_option("map", o.path1)->required();
  lift->add_option("solution", o.path2)->required();
  lift->add_option("output", o.path3, "Output file (default: stdout)");

  auto* project = app.add_subcommand("project", "Restrict an output solution to the input of a map");
  project->add_option("map", o.path1)->required();
  project->add_option("solution", o.path2)->required();
  project->add_option("output", o.path3, "Output file (default: stdout)");

  auto* chain = app.add_subcommand("chain", "Run every reduction stage from a formula or instance");
  chain->add_option("input", o.path1)->required();
  chain->add_option("outdir", o.path2)->required();
  budget_flags(chain);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*alliance) return cmd_alliance(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*qbf_cmd) return cmd_qbf_eval(o, out);
    if (*reduce) return cmd_reduce(o, out);
    if (*lift) return cmd_lift(o, out);
    if (*project) return cmd_project(o, out);
    if (*chain) return cmd_chain(o, out);
  } catch (const TriviallyNegative& e) {
    err << "negative: " << e.what() << '\n';
    return kNegative;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace secset::cli
