#include "secset/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "secset/errors.hpp"

namespace secset {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::istringstream in{std::string(text.substr(pos, end - pos))};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty() && line.tokens.front() != "c") lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(std::string("expected non-negative integer for ") + what + ", got '" + tok + "'",
                     line);
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw InputError(std::string(what) + " is too large", line);
  }
}

void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw InputError("'" + l.tokens[0] + "' expects " + std::to_string(n - 1) + " argument(s)",
                     l.number);
}

VertexId parse_vertex(const std::string& tok, std::size_t n, std::size_t line) {
  std::size_t v = parse_count(tok, line, "vertex id");
  if (v < 1 || v > n)
    throw InputError("vertex id " + tok + " out of range 1.." + std::to_string(n), line);
  return static_cast<VertexId>(v - 1);
}

bool is_sorted_set(const VertexSet& s) {
  return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

}  // namespace

std::string Variant::name() const {
  std::string out = exact ? "Exact Secure Set" : "Secure Set";
  switch (constraints) {
    case Constraints::None: break;
    case Constraints::Forbidden: out += "^F"; break;
    case Constraints::ForbiddenNecessary: out += "^FN"; break;
    case Constraints::ForbiddenNecessaryComplementary: out += "^FNC"; break;
  }
  return out;
}

Variant variant_of(const Instance& inst) {
  Variant v;
  v.exact = inst.exact;
  if (!inst.pairs.empty())
    v.constraints = Constraints::ForbiddenNecessaryComplementary;
  else if (!inst.necessary.empty())
    v.constraints = Constraints::ForbiddenNecessary;
  else if (!inst.forbidden.empty())
    v.constraints = Constraints::Forbidden;
  return v;
}

void validate(const Instance& inst) {
  const std::size_t n = inst.graph.size();
  if (inst.k < 1 || inst.k > n)
    throw InputError("k=" + std::to_string(inst.k) + " out of range 1.." + std::to_string(n));
  for (const VertexSet* s : {&inst.forbidden, &inst.necessary}) {
    if (!is_sorted_set(*s)) throw InputError("constraint set is not sorted and duplicate-free");
    if (!s->empty() && s->back() >= n) throw InputError("constraint vertex out of range");
  }
  std::vector<VertexId> both;
  std::set_intersection(inst.forbidden.begin(), inst.forbidden.end(), inst.necessary.begin(),
                        inst.necessary.end(), std::back_inserter(both));
  if (!both.empty())
    throw InputError("vertex '" + inst.graph.label(both.front()) + "' is both forbidden and necessary");
  std::set<Edge> seen;
  for (auto [a, b] : inst.pairs) {
    if (a >= n || b >= n) throw InputError("complementary pair vertex out of range");
    if (a == b) throw InputError("complementary pair repeats vertex '" + inst.graph.label(a) + "'");
    if (!seen.insert(std::minmax(a, b)).second)
      throw InputError("duplicate complementary pair");
  }
}

bool satisfies_constraints(const Instance& inst, const VertexSet& s) {
  if (s.empty() || s.size() > inst.k) return false;
  if (inst.exact && s.size() != inst.k) return false;
  auto in = [&](VertexId v) { return std::binary_search(s.begin(), s.end(), v); };
  for (VertexId v : inst.forbidden)
    if (in(v)) return false;
  for (VertexId v : inst.necessary)
    if (!in(v)) return false;
  for (auto [a, b] : inst.pairs)
    if (in(a) == in(b)) return false;
  return true;
}

Instance parse_instance(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw InputError("missing 'p ss <n> <m>' header");
  const Line& header = lines.front();
  if (header.tokens.size() != 4 || header.tokens[0] != "p" || header.tokens[1] != "ss")
    throw InputError("malformed header, expected 'p ss <n> <m>'", header.number);
  const std::size_t n = parse_count(header.tokens[2], header.number, "vertex count");
  const std::size_t m = parse_count(header.tokens[3], header.number, "edge count");

  std::vector<Edge> edges;
  std::set<Edge> edge_set;
  std::vector<std::string> labels(n);
  std::optional<std::size_t> k;
  std::size_t k_line = 0;
  bool exact = false;
  std::vector<VertexId> forbidden, necessary;
  std::vector<Edge> pairs;
  std::set<Edge> pair_set;
  std::unordered_set<std::string> used_labels;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& d = l.tokens[0];
    if (d == "e") {
      expect_arity(l, 3);
      VertexId u = parse_vertex(l.tokens[1], n, l.number);
      VertexId v = parse_vertex(l.tokens[2], n, l.number);
      if (u == v) throw InputError("self-loop on vertex " + l.tokens[1], l.number);
      if (!edge_set.insert(std::minmax(u, v)).second)
        throw InputError("duplicate edge " + l.tokens[1] + " " + l.tokens[2], l.number);
      edges.emplace_back(u, v);
    } else if (d == "k") {
      expect_arity(l, 2);
      if (k) throw InputError("duplicate 'k' line", l.number);
      k = parse_count(l.tokens[1], l.number, "k");
      k_line = l.number;
    } else if (d == "exact") {
      expect_arity(l, 1);
      if (exact) throw InputError("duplicate 'exact' line", l.number);
      exact = true;
    } else if (d == "forbid" || d == "need") {
      expect_arity(l, 2);
      auto& target = d == "forbid" ? forbidden : necessary;
      VertexId v = parse_vertex(l.tokens[1], n, l.number);
      if (std::find(target.begin(), target.end(), v) != target.end())
        throw InputError("vertex " + l.tokens[1] + " listed twice in '" + d + "'", l.number);
      auto& other = d == "forbid" ? necessary : forbidden;
      if (std::find(other.begin(), other.end(), v) != other.end())
        throw InputError("vertex " + l.tokens[1] + " is both forbidden and necessary", l.number);
      target.push_back(v);
    } else if (d == "comp") {
      expect_arity(l, 3);
      VertexId a = parse_vertex(l.tokens[1], n, l.number);
      VertexId b = parse_vertex(l.tokens[2], n, l.number);
      if (a == b) throw InputError("complementary pair repeats vertex " + l.tokens[1], l.number);
      if (!pair_set.insert(std::minmax(a, b)).second)
        throw InputError("duplicate complementary pair", l.number);
      pairs.emplace_back(a, b);
    } else if (d == "name") {
      expect_arity(l, 3);
      VertexId v = parse_vertex(l.tokens[1], n, l.number);
      if (!labels[v].empty()) throw InputError("vertex " + l.tokens[1] + " named twice", l.number);
      if (!used_labels.insert(l.tokens[2]).second)
        throw InputError("duplicate label '" + l.tokens[2] + "'", l.number);
      labels[v] = l.tokens[2];
    } else if (d == "p") {
      throw InputError("duplicate header", l.number);
    } else {
      throw InputError("unknown directive '" + d + "'", l.number);
    }
  }

  if (edges.size() != m)
    throw InputError("header declares " + std::to_string(m) + " edges but " +
                     std::to_string(edges.size()) + " were given", header.number);
  if (!k) throw InputError("missing 'k' line");
  if (*k < 1 || *k > n)
    throw InputError("k=" + std::to_string(*k) + " out of range 1.." + std::to_string(n), k_line);

  for (VertexId v = 0; v < n; ++v) {
    if (!labels[v].empty()) continue;
    std::string def = std::to_string(v + 1);
    if (used_labels.count(def))
      throw InputError("default label '" + def + "' of vertex " + def + " collides with a name");
    labels[v] = std::move(def);
  }

  Instance inst;
  inst.graph = Graph::from_edges(n, edges, std::move(labels));
  inst.k = *k;
  inst.exact = exact;
  inst.forbidden = make_vertex_set(std::move(forbidden));
  inst.necessary = make_vertex_set(std::move(necessary));
  inst.pairs = std::move(pairs);
  validate(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  const Graph& g = inst.graph;
  out << "p ss " << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  out << "k " << inst.k << '\n';
  if (inst.exact) out << "exact\n";
  for (VertexId v : inst.forbidden) out << "forbid " << v + 1 << '\n';
  for (VertexId v : inst.necessary) out << "need " << v + 1 << '\n';
  for (auto [a, b] : inst.pairs) out << "comp " << a + 1 << ' ' << b + 1 << '\n';
  for (VertexId v = 0; v < g.size(); ++v)
    if (g.label(v) != std::to_string(v + 1)) out << "name " << v + 1 << ' ' << g.label(v) << '\n';
  return out.str();
}

std::optional<VertexSet> parse_solution(std::string_view text, const Graph& g) {
  auto lines = tokenize(text);
  if (lines.size() != 1 || lines[0].tokens[0] != "s")
    throw InputError("expected a single 's <v1> ...' or 's NONE' line");
  const Line& l = lines[0];
  if (l.tokens.size() == 2 && l.tokens[1] == "NONE") return std::nullopt;
  std::vector<VertexId> ids;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) {
    VertexId v = parse_vertex(l.tokens[i], g.size(), l.number);
    if (std::find(ids.begin(), ids.end(), v) != ids.end())
      throw InputError("vertex " + l.tokens[i] + " listed twice", l.number);
    ids.push_back(v);
  }
  return make_vertex_set(std::move(ids));
}

std::string format_solution(const std::optional<VertexSet>& solution) {
  if (!solution) return "s NONE";
  std::string out = "s";
  for (VertexId v : *solution) out += ' ' + std::to_string(v + 1);
  return out;
}

}  // namespace secset
