#include "secset/reductions.hpp"

#include <algorithm>
#include <sstream>

#include "secset/errors.hpp"

namespace secset {

namespace {

using qbf::Literal;

struct KindName {
  ReductionKind kind;
  const char* token;
};

constexpr KindName kKindNames[] = {
    {ReductionKind::Qsat2ToEssfnc, "qsat2-essfnc"}, {ReductionKind::EssfncToEssfn, "essfnc-essfn"},
    {ReductionKind::EssfnToEssf, "essfn-essf"},     {ReductionKind::EssfToSsf, "essf-ssf"},
    {ReductionKind::DropForbidden, "drop-forbidden"}, {ReductionKind::Embed, "embed"},
};

std::uint64_t choose2(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Output graph under construction together with the provenance of each vertex.
class Construction {
 public:
  void copy_input(const Graph& g) {
    for (VertexId v = 0; v < g.size(); ++v) {
      builder_.add_vertex(g.label(v));
      provenance_.push_back(Provenance::orig(v));
    }
    for (auto [u, v] : g.edges()) builder_.add_edge(u, v);
  }

  VertexId gadget(std::string label, std::string family, std::vector<long long> indices) {
    provenance_.push_back(Provenance::gadget(std::move(family), std::move(indices)));
    return builder_.add_vertex(std::move(label));
  }

  GraphBuilder& builder() { return builder_; }

  Graph build_graph() { return std::move(builder_).build(); }
  std::vector<Provenance> take_provenance() { return std::move(provenance_); }

 private:
  GraphBuilder builder_;
  std::vector<Provenance> provenance_;
};

void enforce_budget(const SizeForecast& size, const ReductionOptions& options, ReductionKind kind) {
  if (size.vertices > options.max_vertices || size.edges > options.max_edges)
    throw BudgetExceeded(to_string(kind) + " output would have " + std::to_string(size.vertices) +
                         " vertices and " + std::to_string(size.edges) + " edges (caps " +
                         std::to_string(options.max_vertices) + " / " +
                         std::to_string(options.max_edges) + ")");
}

ReductionMap graph_map(ReductionKind kind, const Instance& inst) {
  ReductionMap map;
  map.kind = kind;
  map.input_vertices = inst.graph.size();
  map.input_k = inst.k;
  map.input_exact = inst.exact;
  return map;
}

std::string idx(long long i) { return std::to_string(i); }

std::vector<VertexId> merge(std::initializer_list<const std::vector<VertexId>*> parts) {
  std::vector<VertexId> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::vector<bool> membership(const VertexSet& s, std::size_t n, const char* what) {
  std::vector<bool> in(n, false);
  for (VertexId v : s) {
    if (v >= n) throw Refusal(std::string(what) + " contains vertex id " + std::to_string(v + 1) +
                              " outside the input graph");
    in[v] = true;
  }
  return in;
}

}  // namespace

std::string to_string(ReductionKind kind) {
  for (const auto& [k, token] : kKindNames)
    if (k == kind) return token;
  return "unknown";
}

ReductionKind parse_reduction_kind(std::string_view token) {
  for (const auto& [k, t] : kKindNames)
    if (token == t) return k;
  throw InputError("unknown reduction kind '" + std::string(token) + "'");
}

SizeForecast forecast(ReductionKind kind, const Instance& inst) {
  const std::uint64_t n = inst.graph.size();
  const std::uint64_t m = inst.graph.edge_count();
  const std::uint64_t k = inst.k;
  switch (kind) {
    case ReductionKind::EssfncToEssfn: {
      const std::uint64_t c = inst.pairs.size();
      // Per side: hub edge, n+1 edges to C, 3 edges to D, and a clique on 2(n+4) vertices.
      return {n + c * (4 * n + 19), m + c * 2 * (1 + (n + 1) + 3 + choose2(2 * n + 8))};
    }
    case ReductionKind::EssfnToEssf: {
      const std::uint64_t open = n - inst.forbidden.size() - inst.necessary.size();
      return {n + open * 2 * (n + 1), m + open * ((n + 1) + choose2(2 * n + 2))};
    }
    case ReductionKind::EssfToSsf:
      return {n + n * 2 * (n + 2) + n + k, m + n * ((n + 1) + choose2(2 * n + 4)) + choose2(2 * n + k)};
    case ReductionKind::DropForbidden: {
      const std::uint64_t f = inst.forbidden.size();
      return {n + f * 2 * k, m + f * (2 * k + choose2(2 * k))};
    }
    case ReductionKind::Embed:
      return {n, m};
    case ReductionKind::Qsat2ToEssfnc:
      break;
  }
  throw Refusal("no graph-input forecast for " + to_string(kind));
}

Reduction reduce_qsat2_to_essfnc(const qbf::QSat2Formula& f, const ReductionOptions& options) {
  if (!qbf::is_normalized(f))
    throw Refusal("formula must be normalized: no contradictory terms, every term with a universal literal");
  const long long nx = static_cast<long long>(f.existential.size());
  const long long ny = static_cast<long long>(f.universal.size());
  const long long nt = static_cast<long long>(f.terms.size());
  enforce_budget({static_cast<std::uint64_t>(2 * nx + 2 * ny + 3 * ny * nt + 2 * ny + nt + 2 + 8 * nt),
                  static_cast<std::uint64_t>(6 * nt + 4 * ny * nt + 2 * ny * (nt + 1) +
                                             2 * ny * (2 * nt - 1))},
                 options, ReductionKind::Qsat2ToEssfnc);

  auto position = [](const std::vector<int>& block, int var) -> long long {
    return std::find(block.begin(), block.end(), var) - block.begin() + 1;
  };

  Construction c;
  std::vector<VertexId> x, x_bar, y, y_bar;
  for (long long i = 1; i <= nx; ++i) x.push_back(c.gadget("x" + idx(i), "X", {i}));
  for (long long i = 1; i <= nx; ++i) x_bar.push_back(c.gadget("x" + idx(i) + "_bar", "X_bar", {i}));
  for (long long i = 1; i <= ny; ++i) y.push_back(c.gadget("y" + idx(i), "Y", {i}));
  for (long long i = 1; i <= ny; ++i) y_bar.push_back(c.gadget("y" + idx(i) + "_bar", "Y_bar", {i}));

  std::vector<std::vector<VertexId>> y_tri(ny), y_bar_tri(ny), y_box(ny);
  for (long long i = 1; i <= ny; ++i)
    for (long long j = 1; j <= nt; ++j)
      y_tri[i - 1].push_back(c.gadget("y" + idx(i) + "_" + idx(j) + "_tri", "Y_tri", {i, j}));
  for (long long i = 1; i <= ny; ++i)
    for (long long j = 1; j <= nt; ++j)
      y_bar_tri[i - 1].push_back(
          c.gadget("y" + idx(i) + "_" + idx(j) + "_bar_tri", "Y_bar_tri", {i, j}));
  std::vector<VertexId> y_prime_tri;
  for (long long j = 1; j <= nt - 1; ++j)
    y_prime_tri.push_back(c.gadget("y" + idx(j) + "_tri", "Y_prime_tri", {j}));
  for (long long i = 1; i <= ny; ++i)
    for (long long j = 1; j <= nt + 1; ++j)
      y_box[i - 1].push_back(c.gadget("y" + idx(i) + "_" + idx(j) + "_box", "Y_box", {i, j}));
  const VertexId d1 = c.gadget("d1_box", "H", {1});
  const VertexId d2 = c.gadget("d2_box", "H", {2});
  const VertexId t_bar_box_hub = c.gadget("t_bar_box", "H", {3});

  // Existential literals of each term as signed block positions; they decide which side
  // of the term chain a lifted assignment selects.
  std::vector<std::vector<long long>> ex_lits(nt);
  for (long long i = 0; i < nt; ++i)
    for (Literal l : f.terms[i]) {
      int var = l < 0 ? -l : l;
      if (f.is_existential(var)) ex_lits[i].push_back(l < 0 ? -position(f.existential, var)
                                                            : position(f.existential, var));
    }
  auto term_indices = [&](long long i) {
    std::vector<long long> out{i};
    out.insert(out.end(), ex_lits[i - 1].begin(), ex_lits[i - 1].end());
    return out;
  };

  std::vector<VertexId> t, t_bar, t_bar_box, t_bar_tri, t_prime, t_prime_bar, t_prime_box,
      t_prime_bar_box;
  for (long long i = 1; i <= nt; ++i) t.push_back(c.gadget("t" + idx(i), "T", term_indices(i)));
  for (long long i = 1; i <= nt; ++i)
    t_bar.push_back(c.gadget("t" + idx(i) + "_bar", "T_bar", term_indices(i)));
  for (long long i = 1; i <= nt; ++i)
    t_bar_box.push_back(c.gadget("t" + idx(i) + "_bar_box", "T_bar_box", {i}));
  for (long long i = 1; i <= nt; ++i)
    t_bar_tri.push_back(c.gadget("t" + idx(i) + "_bar_tri", "T_bar_tri", {i}));
  for (long long i = 1; i <= nt; ++i)
    t_prime.push_back(c.gadget("t" + idx(i) + "_prime", "T_prime", term_indices(i)));
  for (long long i = 1; i <= nt; ++i)
    t_prime_bar.push_back(c.gadget("t" + idx(i) + "_prime_bar", "T_prime_bar", term_indices(i)));
  for (long long i = 1; i <= nt; ++i)
    t_prime_box.push_back(c.gadget("t" + idx(i) + "_prime_box", "T_prime_box", {i}));
  for (long long i = 1; i <= nt; ++i)
    t_prime_bar_box.push_back(c.gadget("t" + idx(i) + "_prime_bar_box", "T_prime_bar_box", {i}));

  // Vertex of the complement of a literal.
  auto complement = [&](Literal l) -> VertexId {
    int var = l < 0 ? -l : l;
    if (f.is_existential(var)) {
      auto p = position(f.existential, var) - 1;
      return l > 0 ? x_bar[p] : x[p];
    }
    auto p = position(f.universal, var) - 1;
    return l > 0 ? y_bar[p] : y[p];
  };

  GraphBuilder& b = c.builder();
  const std::vector<VertexId> all_y = merge({&y, &y_bar});
  for (long long i = 0; i < nt; ++i) {
    b.add_edge(t_bar[i], t_bar_box_hub);
    b.add_edge(t_bar[i], t_bar_tri[i]);
    b.add_edge(t_prime[i], t_prime_box[i]);
    b.add_edge(t_prime_bar[i], t_prime_bar_box[i]);
    std::size_t existential_count = 0;
    for (Literal l : f.terms[i]) {
      int var = l < 0 ? -l : l;
      if (f.is_existential(var)) {
        ++existential_count;
        b.add_edge(complement(l), t_bar_box[i]);
        b.add_edge(complement(l), t_bar[i]);
      } else {
        b.add_edge(complement(l), t_prime_bar[i]);
      }
    }
    if (existential_count <= 1) b.add_edge(d1, t_bar[i]);
    if (existential_count == 0) b.add_edge(d2, t_bar[i]);
  }
  b.add_biclique(t_prime, all_y);
  for (long long i = 0; i < ny; ++i) {
    for (long long j = 0; j < nt; ++j) {
      b.add_edge(y[i], y_tri[i][j]);
      b.add_edge(y_bar[i], y_bar_tri[i][j]);
    }
    for (VertexId box : y_box[i]) {
      b.add_edge(y[i], box);
      b.add_edge(y_bar[i], box);
    }
  }
  b.add_biclique(y_prime_tri, all_y);

  Instance out;
  std::vector<VertexId> necessary = merge({&y, &y_bar, &y_prime_tri, &t_bar_tri});
  for (long long i = 0; i < ny; ++i) {
    necessary.insert(necessary.end(), y_tri[i].begin(), y_tri[i].end());
    necessary.insert(necessary.end(), y_bar_tri[i].begin(), y_bar_tri[i].end());
  }
  std::vector<VertexId> forbidden = merge({&t_bar_box, &t_prime_box, &t_prime_bar_box});
  for (const auto& row : y_box) forbidden.insert(forbidden.end(), row.begin(), row.end());
  forbidden.insert(forbidden.end(), {d1, d2, t_bar_box_hub});
  out.necessary = make_vertex_set(std::move(necessary));
  out.forbidden = make_vertex_set(std::move(forbidden));
  for (long long i = 0; i < nx; ++i) out.pairs.emplace_back(x[i], x_bar[i]);
  for (long long i = 0; i < nt; ++i) {
    out.pairs.emplace_back(t[i], t_bar[i]);
    out.pairs.emplace_back(t_bar[i], t_prime[i]);
    out.pairs.emplace_back(t_prime[i], t_prime_bar[i]);
  }
  out.k = out.necessary.size() + static_cast<std::size_t>(nx + 2 * nt);
  out.exact = true;
  out.graph = c.build_graph();
  validate(out);

  ReductionMap map;
  map.kind = ReductionKind::Qsat2ToEssfnc;
  map.n_x = static_cast<std::size_t>(nx);
  map.n_y = static_cast<std::size_t>(ny);
  map.n_t = static_cast<std::size_t>(nt);
  map.existential_vars = f.existential;
  map.provenance = c.take_provenance();
  return {std::move(out), std::move(map)};
}

Reduction reduce_essfnc_to_essfn(const Instance& inst, const ReductionOptions& options) {
  validate(inst);
  if (!inst.exact) throw Refusal("essfnc-essfn is defined for exact instances only");
  enforce_budget(forecast(ReductionKind::EssfncToEssfn, inst), options, ReductionKind::EssfncToEssfn);
  const long long n = static_cast<long long>(inst.graph.size());
  const Graph& g = inst.graph;

  Construction c;
  c.copy_input(g);
  std::vector<VertexId> forbidden = inst.forbidden;
  std::vector<VertexId> necessary = inst.necessary;
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    const long long j = static_cast<long long>(p) + 1;
    const auto [a, b] = inst.pairs[p];
    const std::string tag = "@p" + idx(j);
    const VertexId tri = c.gadget("tri" + tag, "tri", {j, a + 1LL, b + 1LL});
    necessary.push_back(tri);
    for (VertexId x : {a, b}) {
      const long long xid = x + 1LL;
      const std::string xl = g.label(x);
      const VertexId hub = c.gadget("hub_" + xl + tag, "hub", {xid, j});
      std::vector<VertexId> c_open, d_open, c_box, d_box;
      for (long long i = 1; i <= n + 1; ++i)
        c_open.push_back(c.gadget("c" + idx(i) + "_" + xl + tag, "C_open", {xid, j, i}));
      for (long long i = n + 2; i <= n + 4; ++i)
        d_open.push_back(c.gadget("d" + idx(i) + "_" + xl + tag, "D_open", {xid, j, i}));
      for (long long i = 1; i <= n + 1; ++i)
        c_box.push_back(c.gadget("c" + idx(i) + "_box_" + xl + tag, "C_box", {xid, j, i}));
      for (long long i = n + 2; i <= n + 4; ++i)
        d_box.push_back(c.gadget("d" + idx(i) + "_box_" + xl + tag, "D_box", {xid, j, i}));

      GraphBuilder& bld = c.builder();
      bld.add_edge(tri, hub);
      const VertexId xs[] = {x};
      const VertexId hubs[] = {hub};
      bld.add_biclique(xs, c_open);
      bld.add_biclique(hubs, d_open);
      bld.add_clique(merge({&c_open, &c_box, &d_open, &d_box}));
      forbidden.insert(forbidden.end(), c_box.begin(), c_box.end());
      forbidden.insert(forbidden.end(), d_box.begin(), d_box.end());
    }
  }

  Instance out;
  out.k = inst.k + inst.pairs.size() * static_cast<std::size_t>(n + 6);
  out.exact = true;
  out.forbidden = make_vertex_set(std::move(forbidden));
  out.necessary = make_vertex_set(std::move(necessary));
  out.graph = c.build_graph();
  validate(out);
  ReductionMap map = graph_map(ReductionKind::EssfncToEssfn, inst);
  map.provenance = c.take_provenance();
  return {std::move(out), std::move(map)};
}

Reduction reduce_essfn_to_essf(const Instance& inst, const ReductionOptions& options) {
  validate(inst);
  if (!inst.exact) throw Refusal("essfn-essf is defined for exact instances only");
  if (!inst.pairs.empty()) throw Refusal("essfn-essf needs an instance without pairs; run essfnc-essfn first");
  const std::size_t necessary = inst.necessary.size();
  const std::size_t open = inst.graph.size() - inst.forbidden.size() - necessary;
  if (inst.k < necessary)
    throw TriviallyNegative("k=" + std::to_string(inst.k) + " is below the " +
                            std::to_string(necessary) + " necessary vertices");
  if (inst.k - necessary > open)
    throw TriviallyNegative("k=" + std::to_string(inst.k) + " needs more than the " +
                            std::to_string(open) + " unconstrained vertices");
  enforce_budget(forecast(ReductionKind::EssfnToEssf, inst), options, ReductionKind::EssfnToEssf);
  const long long n = static_cast<long long>(inst.graph.size());
  const Graph& g = inst.graph;

  Construction c;
  c.copy_input(g);
  std::vector<VertexId> forbidden = inst.forbidden;
  std::vector<bool> constrained(g.size(), false);
  for (VertexId v : inst.forbidden) constrained[v] = true;
  for (VertexId v : inst.necessary) constrained[v] = true;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (constrained[v]) continue;
    const long long vid = v + 1LL;
    std::vector<VertexId> open_part, box_part;
    for (long long i = 1; i <= n + 1; ++i)
      open_part.push_back(c.gadget("c" + idx(i) + "@" + g.label(v), "Cv_open", {vid, i}));
    for (long long i = 1; i <= n + 1; ++i)
      box_part.push_back(c.gadget("c" + idx(i) + "_box@" + g.label(v), "Cv_box", {vid, i}));
    const VertexId vs[] = {v};
    c.builder().add_biclique(vs, open_part);
    c.builder().add_clique(merge({&open_part, &box_part}));
    forbidden.insert(forbidden.end(), box_part.begin(), box_part.end());
  }

  Instance out;
  out.k = necessary + (inst.k - necessary) * static_cast<std::size_t>(n + 2);
  out.exact = true;
  out.forbidden = make_vertex_set(std::move(forbidden));
  out.graph = c.build_graph();
  validate(out);
  ReductionMap map = graph_map(ReductionKind::EssfnToEssf, inst);
  map.provenance = c.take_provenance();
  return {std::move(out), std::move(map)};
}

Reduction reduce_essf_to_ssf(const Instance& inst, const ReductionOptions& options) {
  validate(inst);
  if (!inst.exact) throw Refusal("essf-ssf is defined for exact instances only");
  if (!inst.necessary.empty() || !inst.pairs.empty())
    throw Refusal("essf-ssf needs an instance without necessary vertices or pairs");
  enforce_budget(forecast(ReductionKind::EssfToSsf, inst), options, ReductionKind::EssfToSsf);
  const long long n = static_cast<long long>(inst.graph.size());
  const Graph& g = inst.graph;

  Construction c;
  c.copy_input(g);
  std::vector<VertexId> forbidden = inst.forbidden;
  std::vector<VertexId> a0;
  for (VertexId v = 0; v < g.size(); ++v) {
    const long long vid = v + 1LL;
    std::vector<VertexId> open_part, box_part;
    for (long long i = 0; i <= n + 1; ++i)
      open_part.push_back(c.gadget("a" + idx(i) + "@" + g.label(v), "Av_open", {vid, i}));
    for (long long i = 0; i <= n + 1; ++i)
      box_part.push_back(c.gadget("a" + idx(i) + "_box@" + g.label(v), "Av_box", {vid, i}));
    const VertexId vs[] = {v};
    c.builder().add_biclique(vs, std::span<const VertexId>(open_part).subspan(1));
    c.builder().add_clique(merge({&open_part, &box_part}));
    a0.push_back(open_part.front());
    forbidden.insert(forbidden.end(), box_part.begin(), box_part.end());
  }
  std::vector<VertexId> w, f_box;
  for (long long i = 1; i <= n; ++i) w.push_back(c.gadget("w" + idx(i) + "@W", "W", {i}));
  for (long long i = 1; i <= static_cast<long long>(inst.k); ++i)
    f_box.push_back(c.gadget("f" + idx(i) + "_box@F", "F_box", {i}));
  c.builder().add_clique(merge({&a0, &w, &f_box}));
  forbidden.insert(forbidden.end(), f_box.begin(), f_box.end());

  Instance out;
  out.k = inst.k * static_cast<std::size_t>(n + 3) + static_cast<std::size_t>(n);
  out.exact = false;
  out.forbidden = make_vertex_set(std::move(forbidden));
  out.graph = c.build_graph();
  validate(out);
  ReductionMap map = graph_map(ReductionKind::EssfToSsf, inst);
  map.provenance = c.take_provenance();
  return {std::move(out), std::move(map)};
}

Reduction eliminate_forbidden(const Instance& inst, const ReductionOptions& options) {
  validate(inst);
  if (!inst.necessary.empty() || !inst.pairs.empty())
    throw Refusal("drop-forbidden needs an instance without necessary vertices or pairs");
  enforce_budget(forecast(ReductionKind::DropForbidden, inst), options, ReductionKind::DropForbidden);
  const Graph& g = inst.graph;
  const long long twice_k = 2 * static_cast<long long>(inst.k);

  Construction c;
  c.copy_input(g);
  for (VertexId f : inst.forbidden) {
    std::vector<VertexId> guard;
    for (long long i = 1; i <= twice_k; ++i)
      guard.push_back(c.gadget("f" + idx(i) + "@" + g.label(f), "f", {f + 1LL, i}));
    const VertexId fs[] = {f};
    c.builder().add_biclique(fs, guard);
    c.builder().add_clique(guard);
  }

  Instance out;
  out.k = inst.k;
  out.exact = inst.exact;
  out.graph = c.build_graph();
  validate(out);
  ReductionMap map = graph_map(ReductionKind::DropForbidden, inst);
  map.provenance = c.take_provenance();
  return {std::move(out), std::move(map)};
}

Reduction embed_trivial(const Instance& inst, Constraints target) {
  validate(inst);
  const Variant current = variant_of(inst);
  if (static_cast<int>(target) < static_cast<int>(current.constraints))
    throw Refusal("cannot embed a " + current.name() + " instance into a narrower variant");
  ReductionMap map = graph_map(ReductionKind::Embed, inst);
  for (VertexId v = 0; v < inst.graph.size(); ++v) map.provenance.push_back(Provenance::orig(v));
  return {inst, std::move(map)};
}

VertexSet lift_solution(const ReductionMap& map, const VertexSet& input_solution) {
  if (map.kind == ReductionKind::Qsat2ToEssfnc)
    throw Refusal("formula maps lift existential assignments, not vertex sets");
  const auto in = membership(input_solution, map.input_vertices, "input solution");
  const std::size_t size = input_solution.size();
  const bool exact = map.kind != ReductionKind::DropForbidden && map.kind != ReductionKind::Embed
                         ? true
                         : map.input_exact;
  if (size == 0 || size > map.input_k || (exact && size != map.input_k))
    throw Refusal("input solution has " + std::to_string(size) + " vertices; the input instance needs " +
                  (exact ? "exactly " : "between 1 and ") + std::to_string(map.input_k));

  auto chosen = [&](long long one_based) { return in.at(static_cast<std::size_t>(one_based - 1)); };
  VertexSet out;
  for (VertexId v = 0; v < map.provenance.size(); ++v) {
    const Provenance& p = map.provenance[v];
    bool take = false;
    if (p.original) {
      take = in.at(p.input);
    } else if (p.family == "tri") {
      if (chosen(p.indices.at(1)) == chosen(p.indices.at(2)))
        throw Refusal("input solution must contain exactly one member of complementary pair " +
                      std::to_string(p.indices.at(0)));
      take = true;
    } else if (p.family == "hub" || p.family == "C_open" || p.family == "D_open" ||
               p.family == "Cv_open" || p.family == "Av_open") {
      take = chosen(p.indices.at(0));
    } else if (p.family == "W") {
      take = true;
    }
    if (take) out.push_back(v);
  }
  return out;
}

VertexSet lift_solution(const ReductionMap& map, const qbf::Assignment& existential) {
  if (map.kind != ReductionKind::Qsat2ToEssfnc)
    throw Refusal("only formula maps lift assignments");
  std::vector<bool> truth;
  for (int var : map.existential_vars) {
    if (!existential.contains(var))
      throw Refusal("assignment does not set existential variable " + std::to_string(var));
    truth.push_back(existential.value(var));
  }
  auto holds = [&](long long lit) { return truth.at(static_cast<std::size_t>(std::llabs(lit) - 1)) == (lit > 0); };
  auto term_open = [&](const std::vector<long long>& indices) {
    return std::all_of(indices.begin() + 1, indices.end(), holds);
  };

  VertexSet out;
  for (VertexId v = 0; v < map.provenance.size(); ++v) {
    const Provenance& p = map.provenance[v];
    const std::string& fam = p.family;
    bool take = false;
    if (fam == "Y" || fam == "Y_bar" || fam == "Y_tri" || fam == "Y_bar_tri" ||
        fam == "Y_prime_tri" || fam == "T_bar_tri") {
      take = true;
    } else if (fam == "X") {
      take = truth.at(static_cast<std::size_t>(p.indices.at(0) - 1));
    } else if (fam == "X_bar") {
      take = !truth.at(static_cast<std::size_t>(p.indices.at(0) - 1));
    } else if (fam == "T" || fam == "T_prime") {
      take = term_open(p.indices);
    } else if (fam == "T_bar" || fam == "T_prime_bar") {
      take = !term_open(p.indices);
    }
    if (take) out.push_back(v);
  }
  return out;
}

VertexSet project_solution(const ReductionMap& map, const VertexSet& output_solution) {
  std::vector<VertexId> out;
  for (VertexId v : output_solution) {
    if (v >= map.provenance.size())
      throw InputError("output solution vertex " + std::to_string(v + 1) + " is not in the map");
    if (map.provenance[v].original) out.push_back(map.provenance[v].input);
  }
  return make_vertex_set(std::move(out));
}

qbf::Assignment project_assignment(const ReductionMap& map, const VertexSet& output_solution) {
  if (map.kind != ReductionKind::Qsat2ToEssfnc)
    throw Refusal("only formula maps project to assignments");
  qbf::Assignment a;
  for (int var : map.existential_vars) a.set(var, false);
  for (VertexId v : output_solution) {
    if (v >= map.provenance.size())
      throw InputError("output solution vertex " + std::to_string(v + 1) + " is not in the map");
    const Provenance& p = map.provenance[v];
    if (!p.original && p.family == "X")
      a.set(map.existential_vars.at(static_cast<std::size_t>(p.indices.at(0) - 1)), true);
  }
  return a;
}

std::string serialize_map(const ReductionMap& map) {
  std::ostringstream out;
  out << "p ssmap " << to_string(map.kind) << ' ' << map.provenance.size() << '\n';
  if (map.kind == ReductionKind::Qsat2ToEssfnc) {
    out << "i nx " << map.n_x << "\ni ny " << map.n_y << "\ni nt " << map.n_t << "\ni evars";
    for (int v : map.existential_vars) out << ' ' << v;
    out << '\n';
  } else {
    out << "i vertices " << map.input_vertices << "\ni k " << map.input_k << "\ni exact "
        << (map.input_exact ? 1 : 0) << '\n';
  }
  for (std::size_t v = 0; v < map.provenance.size(); ++v) {
    const Provenance& p = map.provenance[v];
    out << "v " << v + 1;
    if (p.original) {
      out << " orig " << p.input + 1;
    } else {
      out << " gadget " << p.family;
      for (long long i : p.indices) out << ' ' << i;
    }
    out << '\n';
  }
  return out.str();
}

ReductionMap parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  ReductionMap map;
  std::string line;
  std::size_t number = 0;
  std::size_t declared = 0;
  bool header = false;
  std::vector<bool> seen;
  auto to_count = [&](const std::string& tok) -> long long {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw InputError("expected an integer, got '" + tok + "'", number);
    }
  };
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (!header) {
      if (tok.size() != 4 || tok[0] != "p" || tok[1] != "ssmap")
        throw InputError("malformed header, expected 'p ssmap <kind> <n_out>'", number);
      map.kind = parse_reduction_kind(tok[2]);
      long long n = to_count(tok[3]);
      if (n < 0) throw InputError("negative vertex count", number);
      declared = static_cast<std::size_t>(n);
      map.provenance.resize(declared);
      seen.assign(declared, false);
      header = true;
    } else if (tok[0] == "i") {
      if (tok.size() < 2) throw InputError("summary line needs a key", number);
      const std::string& key = tok[1];
      if (key == "evars") {
        for (std::size_t i = 2; i < tok.size(); ++i) map.existential_vars.push_back(static_cast<int>(to_count(tok[i])));
        continue;
      }
      if (tok.size() != 3) throw InputError("summary '" + key + "' takes one value", number);
      const auto value = static_cast<std::size_t>(to_count(tok[2]));
      if (key == "vertices") map.input_vertices = value;
      else if (key == "k") map.input_k = value;
      else if (key == "exact") map.input_exact = value != 0;
      else if (key == "nx") map.n_x = value;
      else if (key == "ny") map.n_y = value;
      else if (key == "nt") map.n_t = value;
      else throw InputError("unknown summary key '" + key + "'", number);
    } else if (tok[0] == "v") {
      if (tok.size() < 3) throw InputError("vertex line needs an id and a tag", number);
      long long id = to_count(tok[1]);
      if (id < 1 || static_cast<std::size_t>(id) > declared)
        throw InputError("vertex id " + tok[1] + " out of range", number);
      if (seen[id - 1]) throw InputError("vertex " + tok[1] + " listed twice", number);
      seen[id - 1] = true;
      Provenance& p = map.provenance[id - 1];
      if (tok[2] == "orig") {
        if (tok.size() != 4) throw InputError("'orig' takes one input id", number);
        long long input = to_count(tok[3]);
        if (input < 1) throw InputError("input id must be positive", number);
        p = Provenance::orig(static_cast<VertexId>(input - 1));
      } else if (tok[2] == "gadget") {
        if (tok.size() < 4) throw InputError("'gadget' needs a family", number);
        std::vector<long long> indices;
        for (std::size_t i = 4; i < tok.size(); ++i) indices.push_back(to_count(tok[i]));
        p = Provenance::gadget(tok[3], std::move(indices));
      } else {
        throw InputError("unknown provenance tag '" + tok[2] + "'", number);
      }
    } else {
      throw InputError("unknown directive '" + tok[0] + "'", number);
    }
  }
  if (!header) throw InputError("missing 'p ssmap' header");
  for (std::size_t v = 0; v < declared; ++v)
    if (!seen[v]) throw InputError("vertex " + std::to_string(v + 1) + " has no provenance line");
  return map;
}

}  // namespace secset
