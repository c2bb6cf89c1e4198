#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "secset/graph.hpp"

namespace secset {

/// Defender and attacker counts of a subset X of a candidate S:
/// defenders = |N[X] ∩ S|, attackers = |N[X] \ S|.
struct AttackBalance {
  std::size_t defenders = 0;
  std::size_t attackers = 0;

  friend bool operator==(const AttackBalance&, const AttackBalance&) = default;
};

/// A subset X of S with more attackers than defenders; certifies that S is not secure.
struct AttackWitness {
  VertexSet subset;
  std::size_t defenders = 0;
  std::size_t attackers = 0;
};

/// Injective assignment attacker -> defender, read as a list of (attacker, defender) pairs.
struct RepelMatching {
  std::vector<std::pair<VertexId, VertexId>> assignment;
};

/// Largest |S| the exhaustive oracle will enumerate (2^|S| subsets).
inline constexpr std::size_t kDefaultOracleCap = 25;

/// Throws InputError if x is not a subset of s or ids are invalid.
AttackBalance attack_balance(const Graph& g, const VertexSet& s, const VertexSet& x);

/// Searches for an attacking subset of `s`. Returns nullopt iff `s` is secure.
///
/// The search is a branch-and-bound over subsets X that are connected (members linked by
/// overlapping closed neighborhoods) and irredundant (every member brings an attacker no
/// other member reaches). Some witness of that shape exists whenever any witness does:
/// dropping a member without a private attacker keeps attackers fixed and never adds
/// defenders, and balances add up over parts with disjoint neighborhoods.
/// The result is deterministic for a given graph and set.
std::optional<AttackWitness> find_attack_witness(const Graph& g, const VertexSet& s);

/// Literal enumeration of all 2^|s| subsets in lexicographic order of their sorted id lists.
/// Returns the first attacking subset. Throws BudgetExceeded when |s| > cap.
std::optional<AttackWitness> exhaustive_witness_oracle(const Graph& g, const VertexSet& s,
                                                       std::size_t cap = kDefaultOracleCap);

bool is_secure(const Graph& g, const VertexSet& s);

/// Every member v satisfies |N[v] ∩ S| >= |N[v] \ S|. Throws InputError on empty s.
bool is_defensive_alliance(const Graph& g, const VertexSet& s);

/// True iff `m` is injective, defined on exactly the attackers N[x] \ s, and maps into
/// the defenders N[x] ∩ s. Throws InputError for ids outside N[x] or x not a subset of s.
bool verify_matching(const Graph& g, const VertexSet& s, const VertexSet& x, const RepelMatching& m);

}  // namespace secset
