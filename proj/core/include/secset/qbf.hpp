#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace secset::qbf {

/// Signed variable id: positive for the variable, negative for its complement.
using Literal = int;

/// Conjunction of 1..3 literals, duplicate-free, sorted by variable then polarity.
using Term = std::vector<Literal>;

/// ∃ existential ∀ universal (t_1 ∨ ... ∨ t_m), terms in 3-DNF.
struct QSat2Formula {
  std::vector<int> existential;
  std::vector<int> universal;
  std::vector<Term> terms;

  bool is_existential(int var) const;
  bool is_universal(int var) const;

  friend bool operator==(const QSat2Formula&, const QSat2Formula&) = default;
};

/// Truth values for a set of variables.
class Assignment {
 public:
  Assignment() = default;

  void set(int var, bool value) { values_[var] = value; }
  bool contains(int var) const { return values_.count(var) != 0; }
  /// Throws InputError if `var` is unassigned.
  bool value(int var) const;
  bool satisfies(Literal lit) const { return value(lit < 0 ? -lit : lit) == (lit > 0); }

  const std::map<int, bool>& values() const noexcept { return values_; }

  /// Signed literals in the order of `vars`, e.g. "-1 2 3".
  std::string format(const std::vector<int>& vars) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<int, bool> values_;
};

struct TriviallyTrue {
  Assignment witness;
};
struct TriviallyFalse {};
struct Normalized {
  QSat2Formula formula;
};
using NormalizeResult = std::variant<TriviallyTrue, TriviallyFalse, Normalized>;

struct EvalResult {
  bool truth = false;
  std::optional<Assignment> witness;
};

/// Largest n_x + n_y that eval_qsat2 will enumerate.
inline constexpr std::size_t kDefaultVariableCap = 24;

/// qdnf text: `p qdnf <nvars> <nterms>`, one `e ... 0` line, one `a ... 0` line, then one
/// 0-terminated term per line. The blocks must partition 1..nvars.
QSat2Formula parse_qdnf(std::string_view text);
std::string format_qdnf(const QSat2Formula& f);

/// Drops contradictory terms, then reports TriviallyFalse (no terms left), TriviallyTrue
/// (some term has no universal literal), or the formula meeting both assumptions.
NormalizeResult normalize(const QSat2Formula& f);

/// True iff `f` is unchanged by normalize.
bool is_normalized(const QSat2Formula& f);

/// Throws InputError when a variable of `t` is unassigned.
bool term_satisfied(const Term& t, const Assignment& a);

/// Exhaustive ∃∀ evaluation. The witness is the first satisfying existential assignment
/// when assignments are read as bit-vectors x_1..x_n (false < true) in ascending order.
/// Throws BudgetExceeded when n_x + n_y > cap.
EvalResult eval_qsat2(const QSat2Formula& f, std::size_t cap = kDefaultVariableCap);

}  // namespace secset::qbf
