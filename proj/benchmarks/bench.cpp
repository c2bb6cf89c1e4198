#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "secset/qbf.hpp"
#include "secset/reductions.hpp"
#include "secset/security.hpp"
#include "secset/solver.hpp"

using namespace secset;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(SECSET_TEST_DATA) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

qbf::QSat2Formula three_term() { return qbf::parse_qdnf(read("three_term.qdnf")); }

Graph random_graph(std::size_t n, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace

static void BM_WitnessSearchLifted(benchmark::State& state) {
  Reduction r = reduce_qsat2_to_essfnc(three_term());
  VertexSet s = lift_solution(r.map, *qbf::eval_qsat2(three_term()).witness);
  for (auto _ : state) benchmark::DoNotOptimize(find_attack_witness(r.instance.graph, s));
}
BENCHMARK(BM_WitnessSearchLifted);

static void BM_WitnessSearchRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Graph g = random_graph(n, 0.3, 5);
  VertexSet s;
  for (VertexId v = 0; v < n; v += 2) s.push_back(v);
  for (auto _ : state) benchmark::DoNotOptimize(find_attack_witness(g, s));
}
BENCHMARK(BM_WitnessSearchRandom)->Arg(20)->Arg(40)->Arg(80);

static void BM_SolveFormulaInstance(benchmark::State& state) {
  Reduction r = reduce_qsat2_to_essfnc(three_term());
  for (auto _ : state) benchmark::DoNotOptimize(solve(r.instance));
}
BENCHMARK(BM_SolveFormulaInstance)->Unit(benchmark::kMillisecond);

static void BM_SolveRandom(benchmark::State& state) {
  Instance inst;
  inst.graph = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 7);
  inst.k = inst.graph.size();
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst));
}
BENCHMARK(BM_SolveRandom)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_EvalQsat2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(11);
  qbf::QSat2Formula f;
  for (int v = 1; v <= n; ++v) f.existential.push_back(v);
  for (int v = n + 1; v <= 2 * n; ++v) f.universal.push_back(v);
  std::uniform_int_distribution<int> var(1, 2 * n);
  for (int t = 0; t < 4 * n; ++t) {
    qbf::Term term{var(rng), n + 1 + var(rng) % n};
    term.push_back(var(rng));
    for (int& l : term) l = rng() % 2 ? l : -l;
    f.terms.push_back(term);
  }
  auto normalized = qbf::normalize(f);
  if (auto* nf = std::get_if<qbf::Normalized>(&normalized)) f = nf->formula;
  for (auto _ : state) benchmark::DoNotOptimize(qbf::eval_qsat2(f));
}
BENCHMARK(BM_EvalQsat2)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ReduceChainStage(benchmark::State& state) {
  Reduction r = reduce_qsat2_to_essfnc(three_term());
  for (auto _ : state) benchmark::DoNotOptimize(reduce_essfnc_to_essfn(r.instance));
}
BENCHMARK(BM_ReduceChainStage)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
