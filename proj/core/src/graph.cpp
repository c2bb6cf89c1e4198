#include "secset/graph.hpp"

#include <algorithm>
#include <sstream>

#include "secset/errors.hpp"

namespace secset {

namespace {

void check_label(const std::string& label, VertexId v) {
  if (label.empty()) throw InputError("vertex " + std::to_string(v + 1) + " has an empty label");
  for (char c : label)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw InputError("label '" + label + "' contains whitespace");
}

}  // namespace

VertexSet make_vertex_set(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count)
    throw InputError("label count does not match vertex count");
  GraphBuilder builder;
  for (std::size_t v = 0; v < vertex_count; ++v)
    builder.add_vertex(labels.empty() ? std::to_string(v + 1) : std::move(labels[v]));
  for (const auto& [u, v] : edges) builder.add_edge(u, v);
  return std::move(builder).build();
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  const auto& nu = adjacency_.at(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<VertexId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < adjacency_.size(); ++u)
    for (VertexId v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Bitset Graph::closed_neighborhood_bits(VertexId v) const {
  Bitset bits(size());
  bits.set(v);
  for (VertexId u : adjacency_.at(v)) bits.set(u);
  return bits;
}

VertexId GraphBuilder::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  adjacency_.emplace_back();
  return static_cast<VertexId>(labels_.size() - 1);
}

void GraphBuilder::add_edge(VertexId u, VertexId v) {
  if (u >= size() || v >= size())
    throw InputError("edge endpoint out of range: " + std::to_string(u + 1) + " " +
                     std::to_string(v + 1));
  if (u == v) throw InputError("self-loop on vertex " + std::to_string(u + 1));
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
}

void GraphBuilder::add_clique(std::span<const VertexId> members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) add_edge(members[i], members[j]);
}

void GraphBuilder::add_biclique(std::span<const VertexId> left, std::span<const VertexId> right) {
  for (VertexId u : left)
    for (VertexId v : right) add_edge(u, v);
}

Graph GraphBuilder::build() && {
  Graph g;
  g.index_.reserve(labels_.size());
  for (VertexId v = 0; v < labels_.size(); ++v) {
    check_label(labels_[v], v);
    if (!g.index_.emplace(labels_[v], v).second)
      throw InputError("duplicate label '" + labels_[v] + "'");
  }
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < adjacency_.size(); ++v) {
    auto& nv = adjacency_[v];
    std::sort(nv.begin(), nv.end());
    if (std::adjacent_find(nv.begin(), nv.end()) != nv.end())
      throw InputError("duplicate edge at vertex '" + labels_[v] + "'");
    degree_sum += nv.size();
  }
  g.adjacency_ = std::move(adjacency_);
  g.labels_ = std::move(labels_);
  g.edge_count_ = degree_sum / 2;
  return g;
}

Bitset to_bitset(const Graph& g, std::span<const VertexId> xs) {
  Bitset bits(g.size());
  for (VertexId v : xs) {
    if (!g.contains(v)) throw InputError("vertex id out of range: " + std::to_string(v + 1));
    bits.set(v);
  }
  return bits;
}

VertexSet to_vertex_set(const Bitset& bits) {
  VertexSet out;
  bits.for_each([&](std::size_t i) { out.push_back(static_cast<VertexId>(i)); });
  return out;
}

VertexSet closed_neighborhood(const Graph& g, std::span<const VertexId> xs) {
  Bitset bits = to_bitset(g, xs);
  for (VertexId v : xs)
    for (VertexId u : g.neighbors(v)) bits.set(u);
  return to_vertex_set(bits);
}

std::string format_labels(const Graph& g, std::span<const VertexId> xs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << g.label(xs[i]);
  out << '}';
  return out.str();
}

}  // namespace secset
