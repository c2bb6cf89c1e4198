#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secset/graph.hpp"

namespace secset {

/// Which side constraints a problem variant admits. Each level includes the previous ones.
enum class Constraints { None, Forbidden, ForbiddenNecessary, ForbiddenNecessaryComplementary };

struct Variant {
  bool exact = false;
  Constraints constraints = Constraints::None;

  /// e.g. "Secure Set^FN" or "Exact Secure Set".
  std::string name() const;
  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Graph plus problem data: size bound k, exact-size flag, forbidden set, necessary set,
/// and complementary pairs (exactly one member of each pair must be in a solution).
struct Instance {
  Graph graph;
  std::size_t k = 1;
  bool exact = false;
  VertexSet forbidden;
  VertexSet necessary;
  std::vector<Edge> pairs;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Narrowest variant whose constraint sets can express `inst`.
Variant variant_of(const Instance& inst);

/// Throws InputError unless 1 <= k <= |V|, forbidden/necessary are valid sorted sets with
/// empty intersection, and pairs reference distinct valid vertices without repeats.
void validate(const Instance& inst);

/// Size bounds, forbidden, necessary and pair constraints. Security is not checked here.
bool satisfies_constraints(const Instance& inst, const VertexSet& s);

/// Line-oriented instance format:
///   p ss <n> <m> / e <u> <v> / k <k> / exact / forbid <v> / need <v> / comp <u> <v> /
///   name <v> <label> / c <comment>
/// Ids are 1-based. Directives after the header may appear in any order.
Instance parse_instance(std::string_view text);

/// Canonical text form: header, sorted edges, k, flags, constraint lines, non-default names.
std::string serialize_instance(const Instance& inst);

/// `s <v1> <v2> ...` or `s NONE`; returns nullopt for NONE.
std::optional<VertexSet> parse_solution(std::string_view text, const Graph& g);
std::string format_solution(const std::optional<VertexSet>& solution);

}  // namespace secset
