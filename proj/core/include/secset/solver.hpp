#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secset/instance.hpp"

namespace secset {

struct SolverOptions {
  /// Upper limit on the number of constraint-respecting candidate sets of admissible size.
  std::uint64_t max_candidates = std::uint64_t{1} << 26;
};

struct SolveReport {
  std::optional<VertexSet> result;
  /// Complete candidates that passed the alliance filter and reached the witness search.
  std::uint64_t candidates_examined = 0;
  Variant variant;
  /// Reason for a "none" that was decided without search; empty otherwise.
  std::string diagnostic;
};

/// Number of sets that respect the forbidden/necessary/pair constraints and the size bound,
/// saturating at UINT64_MAX. This is the quantity SolverOptions::max_candidates limits.
std::uint64_t candidate_space(const Instance& inst);

/// Finds a qualifying secure set: minimum size first (at-most variants), then the
/// lexicographically first sorted id list. Every returned set passes the witness search.
/// Throws BudgetExceeded when candidate_space exceeds the configured limit.
SolveReport solve(const Instance& inst, const SolverOptions& options = {});

/// Every qualifying secure set, ordered by size then lexicographically.
std::vector<VertexSet> enumerate_solutions(const Instance& inst, const SolverOptions& options = {});

/// Smallest non-empty secure set of a non-empty graph (solve with k = |V| and no constraints).
VertexSet min_nonempty_secure_set(const Graph& g, const SolverOptions& options = {});

}  // namespace secset
