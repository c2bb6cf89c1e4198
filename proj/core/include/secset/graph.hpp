#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "secset/bitset.hpp"

namespace secset {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

using Edge = std::pair<VertexId, VertexId>;

/// Sorts and deduplicates `ids` into a VertexSet.
VertexSet make_vertex_set(std::vector<VertexId> ids);

/// Undirected simple graph over dense ids 0..n-1 with unique, whitespace-free labels.
/// Immutable once built; use GraphBuilder or Graph::from_edges to construct one.
class Graph {
 public:
  Graph() = default;

  /// Throws InputError on self-loops, duplicate edges, out-of-range ids, or bad labels.
  /// Missing labels default to the 1-based decimal id.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  bool adjacent(VertexId u, VertexId v) const;
  bool contains(VertexId v) const noexcept { return v < adjacency_.size(); }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::optional<VertexId> find(std::string_view label) const;

  /// Edges (u, v) with u < v in ascending order.
  std::vector<Edge> edges() const;

  /// Closed neighborhood N[v] as a bitset of width size().
  Bitset closed_neighborhood_bits(VertexId v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;

  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::size_t edge_count_ = 0;
};

/// Incremental construction used by the reductions. Duplicate edges are detected at build().
class GraphBuilder {
 public:
  VertexId add_vertex(std::string label);
  void add_edge(VertexId u, VertexId v);
  /// Adds every edge between distinct members of `members`.
  void add_clique(std::span<const VertexId> members);
  /// Adds every edge u–v with u in `left`, v in `right`.
  void add_biclique(std::span<const VertexId> left, std::span<const VertexId> right);

  std::size_t size() const noexcept { return labels_.size(); }

  Graph build() &&;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<VertexId>> adjacency_;
};

/// N[xs] = union of {v} ∪ N(v) over v in xs. Throws InputError on invalid ids.
VertexSet closed_neighborhood(const Graph& g, std::span<const VertexId> xs);

/// Bitset of width g.size() holding `xs`. Throws InputError on invalid ids.
Bitset to_bitset(const Graph& g, std::span<const VertexId> xs);
VertexSet to_vertex_set(const Bitset& bits);

/// Renders ids as space-separated labels, e.g. "{a, b, c}".
std::string format_labels(const Graph& g, std::span<const VertexId> xs);

}  // namespace secset
