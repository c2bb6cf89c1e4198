#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "secset/instance.hpp"
#include "secset/qbf.hpp"

namespace secset {

enum class ReductionKind {
  Qsat2ToEssfnc,   // ∃∀ 3-DNF formula -> Exact Secure Set^FNC
  EssfncToEssfn,   // complementary pairs -> gadgets with necessary hubs
  EssfnToEssf,     // necessary vertices -> size arithmetic with open cliques
  EssfToSsf,       // exact size -> at-most size via the B clique
  DropForbidden,   // forbidden vertices -> 2k-cliques
  Embed,           // identity into a wider variant
};

std::string to_string(ReductionKind kind);
/// Accepts the tokens used in map files and on the command line, e.g. "essf-ssf".
ReductionKind parse_reduction_kind(std::string_view token);

/// Where an output vertex came from: an input vertex, or a gadget family with indices.
struct Provenance {
  bool original = false;
  VertexId input = 0;
  std::string family;
  std::vector<long long> indices;

  static Provenance orig(VertexId input_vertex) { return {true, input_vertex, {}, {}}; }
  static Provenance gadget(std::string family, std::vector<long long> indices) {
    return {false, 0, std::move(family), std::move(indices)};
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Provenance of every output vertex plus the input summary needed to map solutions.
struct ReductionMap {
  ReductionKind kind = ReductionKind::Embed;
  // Graph inputs.
  std::size_t input_vertices = 0;
  std::size_t input_k = 0;
  bool input_exact = false;
  // Formula inputs.
  std::size_t n_x = 0;
  std::size_t n_y = 0;
  std::size_t n_t = 0;
  std::vector<int> existential_vars;

  std::vector<Provenance> provenance;

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

/// `p ssmap <kind> <n_out>`, `i <key> <values...>` summary lines, then
/// `v <id> orig <input-id>` or `v <id> gadget <family> <indices...>` per output vertex.
std::string serialize_map(const ReductionMap& map);
ReductionMap parse_map(std::string_view text);

struct Reduction {
  Instance instance;
  ReductionMap map;
};

/// Output-size caps; constructions whose forecast exceeds them throw BudgetExceeded.
struct ReductionOptions {
  std::uint64_t max_vertices = 1'000'000;
  std::uint64_t max_edges = 20'000'000;
};

struct SizeForecast {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

/// Closed-form output size of a graph-to-graph reduction, computed without building it.
SizeForecast forecast(ReductionKind kind, const Instance& inst);

/// Requires a normalized formula. Output: exact instance with k = |V_△| + n_x + 2 n_t.
Reduction reduce_qsat2_to_essfnc(const qbf::QSat2Formula& f, const ReductionOptions& options = {});

/// Requires the exact flag. Output has no pairs and k' = k + |C|(n+6).
Reduction reduce_essfnc_to_essfn(const Instance& inst, const ReductionOptions& options = {});

/// Requires the exact flag and no pairs. Output has no necessary vertices and
/// k' = |V_△| + (k - |V_△|)(n+2). Throws TriviallyNegative when k < |V_△| or when fewer than
/// k - |V_△| vertices are neither forbidden nor necessary.
Reduction reduce_essfn_to_essf(const Instance& inst, const ReductionOptions& options = {});

/// Requires the exact flag, no necessary vertices and no pairs. Output is an at-most
/// instance with k' = k(n+3) + n.
Reduction reduce_essf_to_ssf(const Instance& inst, const ReductionOptions& options = {});

/// Requires no necessary vertices and no pairs. Attaches a 2k-clique to every forbidden
/// vertex and clears the forbidden set; k and the exact flag are unchanged.
Reduction eliminate_forbidden(const Instance& inst, const ReductionOptions& options = {});

/// Same instance viewed as a wider variant. Refuses targets narrower than the instance.
Reduction embed_trivial(const Instance& inst, Constraints target);

/// Maps a solution of the input instance to a solution of the output instance, following
/// the constructions used in the correctness proofs. Throws Refusal on inputs that cannot
/// be a solution (wrong size, invalid ids, both or neither member of a pair).
VertexSet lift_solution(const ReductionMap& map, const VertexSet& input_solution);

/// For formula maps: lifts a total existential assignment to the size-k set of the proof.
VertexSet lift_solution(const ReductionMap& map, const qbf::Assignment& existential);

/// Restriction of an output solution to the original vertices, as input ids.
VertexSet project_solution(const ReductionMap& map, const VertexSet& output_solution);

/// For formula maps: x_i is true iff the vertex x_i is in the output solution.
qbf::Assignment project_assignment(const ReductionMap& map, const VertexSet& output_solution);

}  // namespace secset
