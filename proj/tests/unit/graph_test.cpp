#include <doctest.h>

#include <random>

#include "secset/bitset.hpp"
#include "secset/errors.hpp"
#include "secset/graph.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"

using namespace secset;

TEST_CASE("bitset basics") {
  Bitset a(130), b(130);
  CHECK(a.none());
  a.set(0);
  a.set(64);
  a.set(129);
  b.set(64);
  b.set(100);
  CHECK(a.count() == 3);
  CHECK(a.test(129));
  CHECK_FALSE(a.test(128));
  CHECK(a.count_and(b) == 1);
  CHECK(a.count_and_not(b) == 2);
  CHECK(a.intersects(b));
  CHECK_FALSE(b.is_subset_of(a));
  CHECK(a.find_first() == 0);
  CHECK(a.find_next(1) == 64);
  CHECK(a.find_next(65) == 129);
  CHECK(a.find_next(130) == 130);

  Bitset c = a;
  c |= b;
  CHECK(c.count() == 4);
  c &= b;
  CHECK(c == b);
  c.and_not(b);
  CHECK(c.none());
  a.reset(0);
  std::vector<std::size_t> seen;
  a.for_each([&](std::size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::size_t>{64, 129});
}

TEST_CASE("graph from edges") {
  const std::vector<Edge> edges{{0, 1}, {2, 1}};
  Graph g = Graph::from_edges(3, edges);
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.label(2) == "3");
  CHECK(g.find("2") == VertexId{1});
  CHECK_FALSE(g.find("x").has_value());
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("graph construction errors") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, dup), InputError);
  CHECK_THROWS_AS(Graph::from_edges(3, range), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {}, {"a", "a"}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {}, {"a", ""}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {}, {"a", "b c"}), InputError);

  GraphBuilder b;
  VertexId u = b.add_vertex("u");
  CHECK_THROWS_AS(b.add_edge(u, u), InputError);
  CHECK_THROWS_AS(b.add_edge(u, 7), InputError);
}

TEST_CASE("builder cliques and bicliques") {
  GraphBuilder b;
  std::vector<VertexId> left, right;
  for (int i = 0; i < 3; ++i) left.push_back(b.add_vertex("l" + std::to_string(i)));
  for (int i = 0; i < 2; ++i) right.push_back(b.add_vertex("r" + std::to_string(i)));
  b.add_clique(left);
  b.add_biclique(left, right);
  Graph g = std::move(b).build();
  CHECK(g.edge_count() == 3 + 6);
  CHECK(g.degree(left[0]) == 4);
  CHECK(g.degree(right[1]) == 3);
  CHECK_FALSE(g.adjacent(right[0], right[1]));
}

TEST_CASE("closed neighborhood examples") {
  const Graph g = testdata::five_vertex().graph;
  const VertexId a[] = {0};
  CHECK(closed_neighborhood(g, a) == VertexSet{0, 1, 2, 3});
  CHECK(closed_neighborhood(g, {}).empty());
  const VertexId all[] = {0, 1, 2, 3, 4};
  CHECK(closed_neighborhood(g, all) == VertexSet{0, 1, 2, 3, 4});
  const VertexId bad[] = {5};
  CHECK_THROWS_AS(closed_neighborhood(g, bad), InputError);
  CHECK(to_vertex_set(g.closed_neighborhood_bits(4)) == VertexSet{1, 2, 3, 4});
  CHECK(format_labels(g, a) == "{a}");
}

TEST_CASE("property: graphs are simple and symmetric, closed neighborhood is monotone") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = oracle::uniform(rng, 1, 14);
    Graph g = oracle::random_graph(rng, n, 0.4);
    for (VertexId v = 0; v < n; ++v)
      for (VertexId u : g.neighbors(v)) {
        CHECK(u != v);
        CHECK(g.adjacent(u, v));
      }
    VertexSet xs = oracle::random_subset(rng, n, 0.3);
    VertexSet ys = xs;
    for (VertexId v : oracle::random_subset(rng, n, 0.3)) ys.push_back(v);
    ys = make_vertex_set(ys);
    VertexSet nx = closed_neighborhood(g, xs), ny = closed_neighborhood(g, ys);
    CHECK(std::includes(ny.begin(), ny.end(), nx.begin(), nx.end()));
  }
}
