#include "secset/security.hpp"

#include <algorithm>
#include <set>

#include "secset/errors.hpp"

namespace secset {

namespace {

void require_subset(const Bitset& x, const Bitset& s) {
  if (!x.is_subset_of(s)) throw InputError("attacked subset X is not contained in S");
}

// Branch-and-bound over connected, irredundant subsets of the members of S that have at
// least one outside neighbor. Members are indexed locally in ascending id order.
class WitnessSearch {
 public:
  WitnessSearch(const Graph& g, const VertexSet& s) : in_s_(to_bitset(g, s)) {
    for (VertexId v : s) {
      Bitset closed = g.closed_neighborhood_bits(v);
      Bitset out = closed;
      out.and_not(in_s_);
      if (out.none()) continue;
      ids_.push_back(v);
      closed_.push_back(std::move(closed));
      out_.push_back(std::move(out));
    }
    const std::size_t r = ids_.size();
    overlap_.assign(r, Bitset(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (closed_[i].intersects(closed_[j])) {
          overlap_[i].set(j);
          overlap_[j].set(i);
        }
  }

  std::optional<AttackWitness> run() {
    const std::size_t r = ids_.size();
    for (std::size_t root = 0; root < r; ++root) {
      Bitset members(r);
      members.set(root);
      Bitset excluded(r);
      for (std::size_t i = 0; i < root; ++i) excluded.set(i);
      Bitset frontier = overlap_[root];
      frontier.and_not(excluded);
      if (search(members, closed_[root], frontier, excluded)) return found_;
    }
    return std::nullopt;
  }

 private:
  bool search(const Bitset& members, const Bitset& reach, Bitset frontier, Bitset excluded) {
    const std::size_t defenders = reach.count_and(in_s_);
    const std::size_t attackers = reach.count_and_not(in_s_);
    if (attackers > defenders) {
      found_.subset.clear();
      members.for_each([&](std::size_t i) { found_.subset.push_back(ids_[i]); });
      found_.defenders = defenders;
      found_.attackers = attackers;
      return true;
    }
    if (attackers + potential_attackers(members, reach, excluded) <= defenders) return false;

    for (std::size_t w = frontier.find_first(); w < frontier.size(); w = frontier.find_first()) {
      frontier.reset(w);
      // A member that brings no new attacker cannot belong to an irredundant witness
      // extending `members`.
      if (!out_[w].is_subset_of(reach)) {
        Bitset next_members = members;
        next_members.set(w);
        Bitset next_reach = reach;
        next_reach |= closed_[w];
        Bitset next_frontier = overlap_[w];
        next_frontier.and_not(next_members);
        next_frontier.and_not(excluded);
        next_frontier |= frontier;
        if (search(next_members, next_reach, std::move(next_frontier), excluded)) return true;
      }
      excluded.set(w);
    }
    return false;
  }

  // Upper bound on attackers that any extension can still add: defenders never decrease.
  std::size_t potential_attackers(const Bitset& members, const Bitset& reach,
                                  const Bitset& excluded) const {
    Bitset reachable(in_s_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (!members.test(i) && !excluded.test(i)) reachable |= out_[i];
    return reachable.count_and_not(reach);
  }

  Bitset in_s_;
  std::vector<VertexId> ids_;
  std::vector<Bitset> closed_;
  std::vector<Bitset> out_;
  std::vector<Bitset> overlap_;
  AttackWitness found_;
};

}  // namespace

AttackBalance attack_balance(const Graph& g, const VertexSet& s, const VertexSet& x) {
  Bitset in_s = to_bitset(g, s);
  Bitset in_x = to_bitset(g, x);
  require_subset(in_x, in_s);
  Bitset reach(g.size());
  for (VertexId v : x) reach |= g.closed_neighborhood_bits(v);
  return {reach.count_and(in_s), reach.count_and_not(in_s)};
}

std::optional<AttackWitness> find_attack_witness(const Graph& g, const VertexSet& s) {
  return WitnessSearch(g, make_vertex_set(s)).run();
}

std::optional<AttackWitness> exhaustive_witness_oracle(const Graph& g, const VertexSet& s,
                                                       std::size_t cap) {
  const VertexSet members = make_vertex_set(s);
  if (members.size() > cap)
    throw BudgetExceeded("exhaustive witness oracle refuses |S|=" + std::to_string(members.size()) +
                         " above cap " + std::to_string(cap));
  const Bitset in_s = to_bitset(g, members);
  std::vector<std::size_t> cover(g.size(), 0);
  std::size_t defenders = 0;
  std::size_t attackers = 0;
  VertexSet current;
  std::optional<AttackWitness> result;

  auto add = [&](VertexId x) {
    auto touch = [&](VertexId u) {
      if (cover[u]++ == 0) ++(in_s.test(u) ? defenders : attackers);
    };
    touch(x);
    for (VertexId u : g.neighbors(x)) touch(u);
  };
  auto remove = [&](VertexId x) {
    auto untouch = [&](VertexId u) {
      if (--cover[u] == 0) --(in_s.test(u) ? defenders : attackers);
    };
    untouch(x);
    for (VertexId u : g.neighbors(x)) untouch(u);
  };

  // Pre-order of the include-first tree visits subsets in lexicographic order.
  auto visit = [&](auto&& self, std::size_t from) -> bool {
    for (std::size_t j = from; j < members.size(); ++j) {
      add(members[j]);
      current.push_back(members[j]);
      if (attackers > defenders) {
        result = AttackWitness{current, defenders, attackers};
        return true;
      }
      if (self(self, j + 1)) return true;
      current.pop_back();
      remove(members[j]);
    }
    return false;
  };
  visit(visit, 0);
  return result;
}

bool is_secure(const Graph& g, const VertexSet& s) { return !find_attack_witness(g, s).has_value(); }

bool is_defensive_alliance(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw InputError("defensive alliance check needs a non-empty set");
  const Bitset in_s = to_bitset(g, s);
  for (VertexId v : s) {
    Bitset closed = g.closed_neighborhood_bits(v);
    if (closed.count_and(in_s) < closed.count_and_not(in_s)) return false;
  }
  return true;
}

bool verify_matching(const Graph& g, const VertexSet& s, const VertexSet& x, const RepelMatching& m) {
  const Bitset in_s = to_bitset(g, s);
  const Bitset in_x = to_bitset(g, x);
  require_subset(in_x, in_s);
  Bitset reach(g.size());
  for (VertexId v : x) reach |= g.closed_neighborhood_bits(v);

  std::set<VertexId> attackers_seen;
  std::set<VertexId> defenders_used;
  bool ok = true;
  for (auto [attacker, defender] : m.assignment) {
    if (!g.contains(attacker) || !g.contains(defender) || !reach.test(attacker) ||
        !reach.test(defender))
      throw InputError("matching refers to a vertex outside N[X]");
    if (in_s.test(attacker) || !in_s.test(defender)) ok = false;
    if (!attackers_seen.insert(attacker).second) ok = false;
    if (!defenders_used.insert(defender).second) ok = false;
  }
  return ok && attackers_seen.size() == reach.count_and_not(in_s);
}

}  // namespace secset
