#include "secset/solver.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "secset/errors.hpp"
#include "secset/security.hpp"

namespace secset {

namespace {

enum class State : std::uint8_t { Undecided, In, Out };

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

// Complementary pairs linked through shared vertices. Choosing which side is in the
// solution fixes every member of the component.
struct Component {
  std::vector<VertexId> side[2];
};

struct Plan {
  std::vector<State> initial;
  std::vector<int> component_of;
  std::vector<Component> components;
  std::size_t fixed_in = 0;
  std::size_t free_count = 0;
  std::string infeasible;
};

Plan make_plan(const Instance& inst) {
  const std::size_t n = inst.graph.size();
  Plan plan;
  plan.initial.assign(n, State::Undecided);
  plan.component_of.assign(n, -1);
  for (VertexId v : inst.forbidden) plan.initial[v] = State::Out;
  for (VertexId v : inst.necessary) plan.initial[v] = State::In;

  std::vector<std::vector<VertexId>> partner(n);
  for (auto [a, b] : inst.pairs) {
    partner[a].push_back(b);
    partner[b].push_back(a);
  }
  std::vector<int> color(n, -1);
  for (VertexId root = 0; root < n && plan.infeasible.empty(); ++root) {
    if (partner[root].empty() || color[root] >= 0) continue;
    Component comp;
    std::queue<VertexId> queue;
    color[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      comp.side[color[u]].push_back(u);
      for (VertexId w : partner[u]) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          queue.push(w);
        } else if (color[w] == color[u]) {
          plan.infeasible = "complementary pairs through '" + inst.graph.label(root) +
                            "' form an odd cycle";
        }
      }
    }
    if (!plan.infeasible.empty()) break;
    // Side forced into the solution by a necessary or forbidden member, if any.
    int forced = -1;
    for (int side = 0; side < 2; ++side)
      for (VertexId u : comp.side[side]) {
        if (plan.initial[u] == State::Undecided) continue;
        int want = plan.initial[u] == State::In ? side : 1 - side;
        if (forced >= 0 && forced != want)
          plan.infeasible = "complementary pairs through '" + inst.graph.label(root) +
                            "' conflict with forbidden/necessary vertices";
        forced = want;
      }
    if (!plan.infeasible.empty()) break;
    if (forced >= 0) {
      for (int side = 0; side < 2; ++side)
        for (VertexId u : comp.side[side]) plan.initial[u] = side == forced ? State::In : State::Out;
    } else {
      for (int side = 0; side < 2; ++side) {
        std::sort(comp.side[side].begin(), comp.side[side].end());
        for (VertexId u : comp.side[side])
          plan.component_of[u] = static_cast<int>(plan.components.size());
      }
      plan.components.push_back(std::move(comp));
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (plan.initial[v] == State::In) ++plan.fixed_in;
    if (plan.initial[v] == State::Undecided && plan.component_of[v] < 0) ++plan.free_count;
  }
  return plan;
}

// ways[j] = number of ways to add exactly j vertices beyond the fixed ones.
std::vector<std::uint64_t> size_distribution(const Plan& plan, std::size_t n) {
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  std::size_t top = 0;
  for (std::size_t i = 0; i < plan.free_count; ++i) {
    for (std::size_t j = top + 1; j-- > 0;) ways[j + 1] = sat_add(ways[j + 1], ways[j]);
    ++top;
  }
  for (const Component& c : plan.components) {
    const std::size_t a = c.side[0].size();
    const std::size_t b = c.side[1].size();
    std::vector<std::uint64_t> next(n + 1, 0);
    for (std::size_t j = 0; j <= top; ++j) {
      if (ways[j] == 0) continue;
      next[j + a] = sat_add(next[j + a], ways[j]);
      next[j + b] = sat_add(next[j + b], ways[j]);
    }
    ways = std::move(next);
    top += std::max(a, b);
  }
  return ways;
}

std::pair<std::size_t, std::size_t> size_range(const Instance& inst) {
  return inst.exact ? std::pair{inst.k, inst.k} : std::pair{std::size_t{1}, inst.k};
}

class CandidateSearch {
 public:
  CandidateSearch(const Instance& inst, const Plan& plan) : g_(inst.graph), plan_(plan) {
    const std::size_t n = g_.size();
    need_.resize(n);
    for (VertexId v = 0; v < n; ++v) need_[v] = (g_.degree(v) + 2) / 2;
  }

  std::uint64_t examined() const noexcept { return examined_; }

  /// Visits qualifying secure sets of exactly `target` vertices in lexicographic order.
  /// `emit` returns false to stop the search.
  template <typename Emit>
  bool run(std::size_t target, Emit&& emit) {
    reset();
    target_ = target;
    for (VertexId v = 0; v < g_.size(); ++v)
      if (state_[v] == State::In && !alliance_possible(v)) return true;
    if (!size_possible()) return true;
    return descend(0, emit);
  }

 private:
  void reset() {
    const std::size_t n = g_.size();
    state_.assign(n, State::Undecided);
    in_count_.assign(n, 0);
    und_count_.resize(n);
    for (VertexId v = 0; v < n; ++v) und_count_[v] = g_.degree(v) + 1;
    total_in_ = 0;
    max_add_ = plan_.free_count;
    min_add_ = 0;
    for (const Component& c : plan_.components) {
      max_add_ += std::max(c.side[0].size(), c.side[1].size());
      min_add_ += std::min(c.side[0].size(), c.side[1].size());
    }
    trail_.clear();
    for (VertexId v = 0; v < n; ++v)
      if (plan_.initial[v] != State::Undecided) assign(v, plan_.initial[v]);
    trail_.clear();
  }

  void assign(VertexId v, State s) {
    state_[v] = s;
    trail_.push_back(v);
    auto touch = [&](VertexId u) {
      --und_count_[u];
      if (s == State::In) ++in_count_[u];
    };
    touch(v);
    for (VertexId u : g_.neighbors(v)) touch(u);
    if (s == State::In) ++total_in_;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      VertexId v = trail_.back();
      trail_.pop_back();
      const State s = state_[v];
      auto untouch = [&](VertexId u) {
        ++und_count_[u];
        if (s == State::In) --in_count_[u];
      };
      untouch(v);
      for (VertexId u : g_.neighbors(v)) untouch(u);
      if (s == State::In) --total_in_;
      state_[v] = State::Undecided;
    }
  }

  bool alliance_possible(VertexId v) const {
    const std::size_t room = target_ - total_in_;
    return in_count_[v] + std::min(und_count_[v], room) >= need_[v];
  }

  bool size_possible() const {
    return total_in_ + min_add_ <= target_ && total_in_ + max_add_ >= target_;
  }

  // Every In vertex whose neighborhood changed since `mark` must still be able to reach
  // its singleton alliance condition.
  bool consistent_since(std::size_t mark) const {
    if (!size_possible()) return false;
    for (std::size_t i = mark; i < trail_.size(); ++i) {
      VertexId v = trail_[i];
      if (state_[v] == State::In && !alliance_possible(v)) return false;
      for (VertexId u : g_.neighbors(v))
        if (state_[u] == State::In && !alliance_possible(u)) return false;
    }
    return true;
  }

  template <typename Emit>
  bool descend(VertexId from, Emit& emit) {
    VertexId v = from;
    while (v < g_.size() && state_[v] != State::Undecided) ++v;
    if (v == g_.size()) return leaf(emit);

    const std::size_t mark = trail_.size();
    const int comp = plan_.component_of[v];
    if (comp >= 0) {
      const Component& c = plan_.components[comp];
      const int first = std::find(c.side[0].begin(), c.side[0].end(), v) != c.side[0].end() ? 0 : 1;
      const std::size_t lo = std::min(c.side[0].size(), c.side[1].size());
      const std::size_t hi = std::max(c.side[0].size(), c.side[1].size());
      max_add_ -= hi;
      min_add_ -= lo;
      for (int side : {first, 1 - first}) {
        for (int t = 0; t < 2; ++t)
          for (VertexId u : c.side[t]) assign(u, t == side ? State::In : State::Out);
        if (consistent_since(mark) && !descend(v + 1, emit)) return false;
        undo_to(mark);
      }
      max_add_ += hi;
      min_add_ += lo;
      return true;
    }

    --max_add_;
    for (State s : {State::In, State::Out}) {
      assign(v, s);
      if (consistent_since(mark) && !descend(v + 1, emit)) return false;
      undo_to(mark);
    }
    ++max_add_;
    return true;
  }

  template <typename Emit>
  bool leaf(Emit& emit) {
    VertexSet candidate;
    candidate.reserve(total_in_);
    for (VertexId v = 0; v < g_.size(); ++v)
      if (state_[v] == State::In) candidate.push_back(v);
    ++examined_;
    if (find_attack_witness(g_, candidate)) return true;
    return emit(std::move(candidate));
  }

  const Graph& g_;
  const Plan& plan_;
  std::vector<std::size_t> need_;
  std::vector<State> state_;
  std::vector<std::size_t> in_count_;
  std::vector<std::size_t> und_count_;
  std::vector<VertexId> trail_;
  std::size_t total_in_ = 0;
  std::size_t max_add_ = 0;
  std::size_t min_add_ = 0;
  std::size_t target_ = 0;
  std::uint64_t examined_ = 0;
};

// Shared front end: validation, trivially negative cases, and the candidate budget.
std::optional<Plan> prepare(const Instance& inst, const SolverOptions& options, SolveReport& report) {
  validate(inst);
  report.variant = variant_of(inst);
  if (inst.necessary.size() > inst.k) {
    report.diagnostic = "more necessary vertices (" + std::to_string(inst.necessary.size()) +
                        ") than k=" + std::to_string(inst.k);
    return std::nullopt;
  }
  Plan plan = make_plan(inst);
  if (!plan.infeasible.empty()) {
    report.diagnostic = plan.infeasible;
    return std::nullopt;
  }
  const std::uint64_t space = candidate_space(inst);
  if (space > options.max_candidates)
    throw BudgetExceeded("candidate space " +
                         (space == kSaturated ? std::string(">= 2^64") : std::to_string(space)) +
                         " exceeds budget " + std::to_string(options.max_candidates));
  return plan;
}

}  // namespace

std::uint64_t candidate_space(const Instance& inst) {
  Plan plan = make_plan(inst);
  if (!plan.infeasible.empty()) return 0;
  const auto ways = size_distribution(plan, inst.graph.size());
  const auto [lo, hi] = size_range(inst);
  std::uint64_t total = 0;
  for (std::size_t size = std::max(lo, plan.fixed_in); size <= hi; ++size)
    if (size - plan.fixed_in < ways.size()) total = sat_add(total, ways[size - plan.fixed_in]);
  return total;
}

SolveReport solve(const Instance& inst, const SolverOptions& options) {
  SolveReport report;
  auto plan = prepare(inst, options, report);
  if (!plan) return report;
  CandidateSearch search(inst, *plan);
  const auto [lo, hi] = size_range(inst);
  for (std::size_t size = std::max(lo, plan->fixed_in); size <= hi && !report.result; ++size) {
    search.run(size, [&](VertexSet s) {
      report.result = std::move(s);
      return false;
    });
  }
  report.candidates_examined = search.examined();
  return report;
}

std::vector<VertexSet> enumerate_solutions(const Instance& inst, const SolverOptions& options) {
  SolveReport report;
  std::vector<VertexSet> out;
  auto plan = prepare(inst, options, report);
  if (!plan) return out;
  CandidateSearch search(inst, *plan);
  const auto [lo, hi] = size_range(inst);
  for (std::size_t size = std::max(lo, plan->fixed_in); size <= hi; ++size)
    search.run(size, [&](VertexSet s) {
      out.push_back(std::move(s));
      return true;
    });
  return out;
}

VertexSet min_nonempty_secure_set(const Graph& g, const SolverOptions& options) {
  if (g.size() == 0) throw InputError("graph has no vertices");
  Instance inst;
  inst.graph = g;
  inst.k = g.size();
  auto report = solve(inst, options);
  if (!report.result) throw InputError("no secure set found");
  return *report.result;
}

}  // namespace secset
