#include "secset/qbf.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>

#include "secset/errors.hpp"

namespace secset::qbf {

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

long long parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw InputError("expected an integer, got '" + tok + "'", line);
  }
  if (used != tok.size()) throw InputError("expected an integer, got '" + tok + "'", line);
  return value;
}

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

int var_of(Literal lit) { return lit < 0 ? -lit : lit; }

Term canonical_term(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end(), [](Literal a, Literal b) {
    return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

bool contradictory(const Term& t) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i] == -t[i + 1]) return true;
  return false;
}

}  // namespace

bool QSat2Formula::is_existential(int var) const { return contains(existential, var); }
bool QSat2Formula::is_universal(int var) const { return contains(universal, var); }

bool Assignment::value(int var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw InputError("variable " + std::to_string(var) + " is unassigned");
  return it->second;
}

std::string Assignment::format(const std::vector<int>& vars) const {
  std::string out;
  for (int v : vars) {
    if (!out.empty()) out += ' ';
    out += std::to_string(value(v) ? v : -v);
  }
  return out;
}

QSat2Formula parse_qdnf(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw InputError("missing 'p qdnf <nvars> <nterms>' header");
  const Line& header = lines.front();
  if (header.tokens.size() != 4 || header.tokens[0] != "p" || header.tokens[1] != "qdnf")
    throw InputError("malformed header, expected 'p qdnf <nvars> <nterms>'", header.number);
  const long long nvars = parse_int(header.tokens[2], header.number);
  const long long nterms = parse_int(header.tokens[3], header.number);
  if (nvars < 0 || nterms < 0) throw InputError("negative count in header", header.number);
  if (nterms == 0) throw InputError("formula has zero terms", header.number);

  QSat2Formula f;
  std::vector<int> seen(static_cast<std::size_t>(nvars) + 1, 0);
  auto read_block = [&](const Line& l, std::vector<int>& block) {
    if (l.tokens.back() != "0") throw InputError("quantifier block must end with 0", l.number);
    for (std::size_t i = 1; i + 1 < l.tokens.size(); ++i) {
      long long v = parse_int(l.tokens[i], l.number);
      if (v < 1 || v > nvars)
        throw InputError("variable " + l.tokens[i] + " out of range 1.." + std::to_string(nvars),
                         l.number);
      if (seen[v]++)
        throw InputError("variable " + l.tokens[i] + " appears in more than one block position",
                         l.number);
      block.push_back(static_cast<int>(v));
    }
  };

  std::size_t i = 1;
  if (i >= lines.size() || lines[i].tokens[0] != "e")
    throw InputError("missing existential block 'e ... 0'", i < lines.size() ? lines[i].number : 0);
  read_block(lines[i++], f.existential);
  if (i >= lines.size() || lines[i].tokens[0] != "a")
    throw InputError("missing universal block 'a ... 0'", i < lines.size() ? lines[i].number : 0);
  read_block(lines[i++], f.universal);
  for (long long v = 1; v <= nvars; ++v)
    if (!seen[v]) throw InputError("variable " + std::to_string(v) + " is not quantified");

  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "e" || l.tokens[0] == "a")
      throw InputError("expected exactly one 'e' line followed by one 'a' line", l.number);
    if (l.tokens.back() != "0") throw InputError("term must end with 0", l.number);
    std::vector<Literal> lits;
    for (std::size_t j = 0; j + 1 < l.tokens.size(); ++j) {
      long long lit = parse_int(l.tokens[j], l.number);
      if (lit == 0 || lit > nvars || lit < -nvars)
        throw InputError("literal " + l.tokens[j] + " out of range", l.number);
      lits.push_back(static_cast<Literal>(lit));
    }
    Term t = canonical_term(std::move(lits));
    if (t.empty()) throw InputError("empty term", l.number);
    if (t.size() > 3) throw InputError("term has more than 3 literals", l.number);
    f.terms.push_back(std::move(t));
  }
  if (static_cast<long long>(f.terms.size()) != nterms)
    throw InputError("header declares " + std::to_string(nterms) + " terms but " +
                         std::to_string(f.terms.size()) + " were given",
                     header.number);
  return f;
}

std::string format_qdnf(const QSat2Formula& f) {
  std::ostringstream out;
  out << "p qdnf " << f.existential.size() + f.universal.size() << ' ' << f.terms.size() << '\n';
  out << 'e';
  for (int v : f.existential) out << ' ' << v;
  out << " 0\na";
  for (int v : f.universal) out << ' ' << v;
  out << " 0\n";
  for (const Term& t : f.terms) {
    for (Literal l : t) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

NormalizeResult normalize(const QSat2Formula& f) {
  QSat2Formula out;
  out.existential = f.existential;
  out.universal = f.universal;
  for (const Term& t : f.terms) {
    Term c = canonical_term(t);
    if (!contradictory(c)) out.terms.push_back(std::move(c));
  }
  if (out.terms.empty()) return TriviallyFalse{};
  for (const Term& t : out.terms) {
    bool has_universal = std::any_of(t.begin(), t.end(),
                                     [&](Literal l) { return out.is_universal(var_of(l)); });
    if (has_universal) continue;
    Assignment witness;
    for (int v : out.existential) witness.set(v, false);
    for (Literal l : t) witness.set(var_of(l), l > 0);
    return TriviallyTrue{std::move(witness)};
  }
  return Normalized{std::move(out)};
}

bool is_normalized(const QSat2Formula& f) {
  auto r = normalize(f);
  auto* n = std::get_if<Normalized>(&r);
  return n != nullptr && n->formula == f;
}

bool term_satisfied(const Term& t, const Assignment& a) {
  bool all = true;
  for (Literal l : t) all = a.satisfies(l) && all;
  return all;
}

EvalResult eval_qsat2(const QSat2Formula& f, std::size_t cap) {
  const std::size_t nx = f.existential.size();
  const std::size_t ny = f.universal.size();
  if (nx + ny > cap)
    throw BudgetExceeded("eval_qsat2 refuses " + std::to_string(nx + ny) + " variables above cap " +
                         std::to_string(cap));

  // Each term as (required-true mask, required-false mask) over existential and universal bits.
  // Existential bit i holds x_{i+1}; the first variable is the most significant when counting.
  struct Masks {
    std::uint64_t ex_pos = 0, ex_neg = 0, un_pos = 0, un_neg = 0;
  };
  std::vector<Masks> masks;
  for (const Term& t : f.terms) {
    Masks m;
    for (Literal l : t) {
      int v = var_of(l);
      auto ex = std::find(f.existential.begin(), f.existential.end(), v);
      if (ex != f.existential.end()) {
        auto bit = std::uint64_t{1} << (ex - f.existential.begin());
        (l > 0 ? m.ex_pos : m.ex_neg) |= bit;
        continue;
      }
      auto un = std::find(f.universal.begin(), f.universal.end(), v);
      if (un == f.universal.end())
        throw InputError("term uses unquantified variable " + std::to_string(v));
      auto bit = std::uint64_t{1} << (un - f.universal.begin());
      (l > 0 ? m.un_pos : m.un_neg) |= bit;
    }
    masks.push_back(m);
  }

  const std::uint64_t ex_count = std::uint64_t{1} << nx;
  const std::uint64_t un_count = std::uint64_t{1} << ny;
  for (std::uint64_t code = 0; code < ex_count; ++code) {
    std::uint64_t ex = 0;
    for (std::size_t i = 0; i < nx; ++i)
      if (code >> (nx - 1 - i) & 1U) ex |= std::uint64_t{1} << i;
    bool all_universal = true;
    for (std::uint64_t un = 0; un < un_count && all_universal; ++un) {
      bool some_term = false;
      for (const Masks& m : masks) {
        if ((ex & m.ex_pos) == m.ex_pos && (ex & m.ex_neg) == 0 && (un & m.un_pos) == m.un_pos &&
            (un & m.un_neg) == 0) {
          some_term = true;
          break;
        }
      }
      all_universal = some_term;
    }
    if (all_universal) {
      Assignment witness;
      for (std::size_t i = 0; i < nx; ++i) witness.set(f.existential[i], (ex >> i) & 1U);
      return {true, std::move(witness)};
    }
  }
  return {false, std::nullopt};
}

}  // namespace secset::qbf
