#include <doctest.h>

#include <random>
#include <string>

#include "secset/errors.hpp"
#include "secset/instance.hpp"
#include "secset/qbf.hpp"
#include "secset/reductions.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"

using namespace secset;

namespace {

// Line number of the diagnostic parse_instance raises on `text`, or 0 if it parses.
std::size_t error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse five-vertex instance") {
  Instance inst = testdata::five_vertex();
  CHECK(inst.graph.size() == 5);
  CHECK(inst.graph.edge_count() == 8);
  CHECK(inst.k == 3);
  CHECK_FALSE(inst.exact);
  CHECK(inst.graph.label(0) == "a");
  CHECK(variant_of(inst) == Variant{false, Constraints::None});
}

TEST_CASE("parse decorated instance") {
  Instance inst = testdata::decorated();
  CHECK(inst.forbidden.size() == 2);
  CHECK(inst.necessary.size() == 2);
  CHECK(inst.pairs.size() == 1);
  CHECK(inst.exact);
  CHECK(variant_of(inst).name() == "Exact Secure Set^FNC");
}

TEST_CASE("header only instance is edgeless") {
  Instance inst = parse_instance("p ss 3 0\nk 1\n");
  CHECK(inst.graph.size() == 3);
  CHECK(inst.graph.edge_count() == 0);
}

TEST_CASE("directives after the header are order-insensitive") {
  Instance a = parse_instance("p ss 3 2\ne 1 2\ne 2 3\nk 2\nforbid 3\n");
  Instance b = parse_instance("c comment\np ss 3 2\nforbid 3\nk 2\ne 2 3\ne 1 2\n");
  CHECK(a == b);
}

TEST_CASE("instance diagnostics carry line numbers") {
  CHECK(error_line("p ss x 1\nk 1\n") == 1);
  CHECK(error_line("p ss 3 2\ne 1 2\ne 2 1\nk 1\n") == 3);
  CHECK(error_line("p ss 3 1\ne 2 2\nk 1\n") == 2);
  CHECK(error_line("p ss 3 1\ne 1 4\nk 1\n") == 2);
  CHECK(error_line("p ss 3 0\nk 4\n") == 2);
  CHECK(error_line("p ss 3 0\nk 0\n") == 2);
  CHECK(error_line("p ss 3 0\nk 1\nk 2\n") == 3);
  CHECK(error_line("p ss 3 0\nk 1\nbogus 1\n") == 3);
  CHECK(error_line("p ss 3 0\nk 1\nforbid 2\nneed 2\n") == 4);
  CHECK(error_line("p ss 3 0\nk 1\nforbid 2\nforbid 2\n") == 4);
  CHECK(error_line("p ss 3 0\nk 1\ncomp 2 2\n") == 3);
  CHECK(error_line("p ss 3 0\nk 1\ncomp 1 2\ncomp 2 1\n") == 4);
  CHECK(error_line("p ss 3 0\nk 1\nname 1 a\nname 2 a\n") == 4);
  CHECK(error_line("p ss 3 0\nk 1\nname 1 a\nname 1 b\n") == 4);
  CHECK(error_line("p ss 3 0\nk 1\np ss 3 0\n") == 3);
  CHECK_THROWS_AS(parse_instance(""), InputError);
  CHECK_THROWS_AS(parse_instance("p ss 3 2\ne 1 2\nk 1\n"), InputError);
  CHECK_THROWS_AS(parse_instance("p ss 3 0\n"), InputError);
  CHECK_THROWS_AS(parse_instance("p ss 3 0\nk 1\nname 1 2\n"), InputError);
}

TEST_CASE("serialize round trip of the goldens") {
  for (const Instance& inst : {testdata::five_vertex(), testdata::decorated()}) {
    const std::string text = serialize_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
  const std::string text = serialize_instance(testdata::decorated());
  CHECK(text.find("forbid 4\n") != std::string::npos);
  CHECK(text.find("need 7\n") != std::string::npos);
  CHECK(text.find("comp 2 3\n") != std::string::npos);
}

TEST_CASE("serialize round trip keeps gadget labels") {
  Reduction r = reduce_qsat2_to_essfnc(qbf::parse_qdnf(testdata::read("three_term.qdnf")));
  Instance back = parse_instance(serialize_instance(r.instance));
  CHECK(back == r.instance);
  CHECK(back.graph.size() == 59);
  CHECK(back.graph.find("t1_bar_box").has_value());
  CHECK(back.graph.find("y2_3_tri").has_value());
}

TEST_CASE("property: serialize and parse are inverse on random instances") {
  std::mt19937 rng(11);
  const Constraints levels[] = {Constraints::None, Constraints::Forbidden, Constraints::ForbiddenNecessary,
                                Constraints::ForbiddenNecessaryComplementary};
  for (int i = 0; i < 200; ++i) {
    Instance inst = oracle::random_instance(rng, oracle::uniform(rng, 1, 12), levels[i % 4], i % 3 == 0);
    const std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("validate") {
  Instance inst = testdata::decorated();
  CHECK_NOTHROW(validate(inst));
  Instance bad = inst;
  bad.k = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = inst;
  bad.k = 8;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = inst;
  bad.necessary.push_back(3);
  bad.necessary = make_vertex_set(bad.necessary);
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = inst;
  bad.pairs.emplace_back(1, 1);
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = inst;
  bad.pairs.emplace_back(2, 1);
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = inst;
  bad.pairs.emplace_back(1, 9);
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("pair overlapping a constraint set is legal") {
  Instance inst = parse_instance("p ss 3 2\ne 1 2\ne 2 3\nk 2\nneed 1\ncomp 1 2\n");
  CHECK(inst.pairs.size() == 1);
}

TEST_CASE("satisfies constraints") {
  Instance inst = testdata::decorated();
  CHECK(satisfies_constraints(inst, {0, 1, 6}));
  CHECK_FALSE(satisfies_constraints(inst, {0, 1, 2}));
  CHECK_FALSE(satisfies_constraints(inst, {0, 1}));
  CHECK_FALSE(satisfies_constraints(inst, {0, 3, 6}));
  CHECK_FALSE(satisfies_constraints(inst, {1, 4, 6}));
  Instance atmost = testdata::five_vertex();
  CHECK(satisfies_constraints(atmost, {0}));
  CHECK_FALSE(satisfies_constraints(atmost, {}));
  CHECK_FALSE(satisfies_constraints(atmost, {0, 1, 2, 3}));
}

TEST_CASE("solution lines") {
  const Graph g = testdata::five_vertex().graph;
  CHECK(parse_solution("s 3 1 2\n", g) == VertexSet{0, 1, 2});
  CHECK_FALSE(parse_solution("s NONE", g).has_value());
  CHECK_THROWS_AS(parse_solution("s 1 1", g), InputError);
  CHECK_THROWS_AS(parse_solution("s 6", g), InputError);
  CHECK_THROWS_AS(parse_solution("x 1", g), InputError);
  CHECK(format_solution(VertexSet{0, 1, 2}) == "s 1 2 3");
  CHECK(format_solution(std::nullopt) == "s NONE");
}
