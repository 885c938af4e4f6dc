#include "edlogic/linarith.hpp"

#include <algorithm>
#include <sstream>

namespace edlogic {
namespace lin {

void LinearConstraintSystem::add(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
  if (coeffs.size() != variables.size())
    throw FormatError("constraint width does not match variable count");
  constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs)});
}

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Eq: return "=";
  }
  return "?";
}

bool satisfies_all(const LinearConstraintSystem& sys,
                   const std::map<std::string, Rat>& assignment) {
  for (const auto& c : sys.constraints) {
    Rat lhs = 0;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
      if (is_zero(c.coeffs[i])) continue;
      auto it = assignment.find(sys.variables[i]);
      if (it == assignment.end()) return false;
      lhs += c.coeffs[i] * it->second;
    }
    switch (c.rel) {
      case Rel::Ge:
        if (lhs < c.rhs) return false;
        break;
      case Rel::Gt:
        if (lhs <= c.rhs) return false;
        break;
      case Rel::Eq:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Simplex with exact pivots and Bland's least-index anti-cycling rule.

namespace {

class Simplex {
 public:
  Simplex(int cols, long budget) : cols_(cols), red_(cols, Rat(0)), budget_(budget) {}

  void add_row(std::vector<Rat> coeffs, Rat rhs) {
    if (is_negative(rhs)) {
      for (auto& c : coeffs) c = -c;
      rhs = -rhs;
    }
    a_.push_back(std::move(coeffs));
    b_.push_back(std::move(rhs));
  }

  int rows() const { return static_cast<int>(a_.size()); }

  // Appends one artificial column per row, sets the phase-1 objective
  // (minimize their sum), and solves. Returns the optimal value.
  Rat phase1() {
    int m = rows();
    first_artificial_ = cols_;
    for (int r = 0; r < m; ++r) {
      for (int r2 = 0; r2 < m; ++r2) a_[r2].push_back(Rat(r2 == r ? 1 : 0));
      basis_.push_back(cols_ + r);
    }
    cols_ += m;
    red_.assign(cols_, Rat(0));
    value_ = 0;
    for (int r = 0; r < m; ++r) {
      value_ += b_[r];
      for (int j = 0; j < first_artificial_; ++j) red_[j] -= a_[r][j];
    }
    run();
    return value_;
  }

  // Removes artificials from the basis (dropping redundant rows), then
  // minimizes the given objective over structural columns.
  Rat phase2(const std::vector<Rat>& objective) {
    for (int r = rows() - 1; r >= 0; --r) {
      if (basis_[r] < first_artificial_) continue;
      int target = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (!is_zero(a_[r][j])) {
          target = j;
          break;
        }
      if (target >= 0) {
        pivot(r, target);
      } else {
        a_.erase(a_.begin() + r);
        b_.erase(b_.begin() + r);
        basis_.erase(basis_.begin() + r);
      }
    }
    red_.assign(cols_, Rat(0));
    for (int j = 0; j < first_artificial_; ++j) red_[j] = objective[j];
    value_ = 0;
    for (int r = 0; r < rows(); ++r) {
      int bv = basis_[r];
      if (is_zero(objective[bv])) continue;
      value_ += objective[bv] * b_[r];
      for (int j = 0; j < cols_; ++j) red_[j] -= objective[bv] * a_[r][j];
    }
    for (int r = 0; r < rows(); ++r) red_[basis_[r]] = 0;
    run();
    return value_;
  }

  std::vector<Rat> solution(int structural_cols) const {
    std::vector<Rat> z(structural_cols, Rat(0));
    for (int r = 0; r < rows(); ++r)
      if (basis_[r] < structural_cols) z[basis_[r]] = b_[r];
    return z;
  }

 private:
  void run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (j >= first_artificial_ && phase2_started_) continue;
        if (is_negative(red_[j])) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rat best;
      for (int r = 0; r < rows(); ++r) {
        if (!is_positive(a_[r][enter])) continue;
        Rat ratio = b_[r] / a_[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0)
        throw Error("InternalError", "unbounded objective in bounded feasibility program");
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    if (++pivots_ > budget_) throw ResourceLimit("pivot budget exceeded");
    Rat div = a_[r][c];
    for (int j = 0; j < cols_; ++j) a_[r][j] /= div;
    b_[r] /= div;
    for (int r2 = 0; r2 < rows(); ++r2) {
      if (r2 == r || is_zero(a_[r2][c])) continue;
      Rat factor = a_[r2][c];
      for (int j = 0; j < cols_; ++j) a_[r2][j] -= factor * a_[r][j];
      b_[r2] -= factor * b_[r];
    }
    if (!is_zero(red_[c])) {
      Rat factor = red_[c];
      for (int j = 0; j < cols_; ++j) red_[j] -= factor * a_[r][j];
      value_ += factor * b_[r];
    }
    basis_[r] = c;
  }

 public:
  void mark_phase2() { phase2_started_ = true; }

 private:
  int cols_;
  int first_artificial_ = -1;
  bool phase2_started_ = false;
  std::vector<std::vector<Rat>> a_;
  std::vector<Rat> b_;
  std::vector<Rat> red_;
  std::vector<int> basis_;
  Rat value_;
  long pivots_ = 0;
  long budget_;
};

// Recognizes rows of the exact shape a*x >= 0 with a > 0.
bool is_nonneg_bound_row(const Constraint& c, int* var) {
  if (c.rel != Rel::Ge || !is_zero(c.rhs)) return false;
  int found = -1;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (is_zero(c.coeffs[i])) continue;
    if (found >= 0) return false;
    if (!is_positive(c.coeffs[i])) return false;
    found = static_cast<int>(i);
  }
  if (found < 0) return false;
  *var = found;
  return true;
}

}  // namespace

FeasibilityResult feasible(const LinearConstraintSystem& sys, long pivot_budget) {
  int nvars = static_cast<int>(sys.variables.size());

  std::vector<bool> nonneg(nvars, false);
  std::vector<const Constraint*> rows;
  bool any_strict = false;
  for (const auto& c : sys.constraints) {
    int var;
    if (is_nonneg_bound_row(c, &var)) {
      nonneg[var] = true;
      continue;
    }
    if (c.rel == Rel::Gt) any_strict = true;
    rows.push_back(&c);
  }

  // Column layout: for each variable one column (nonneg) or a split pair
  // u - v (free); then the strictness slack s; then one surplus column per
  // inequality row; then s's cap slack.
  std::vector<int> pos_col(nvars), neg_col(nvars, -1);
  int col = 0;
  for (int i = 0; i < nvars; ++i) {
    pos_col[i] = col++;
    if (!nonneg[i]) neg_col[i] = col++;
  }
  int s_col = any_strict ? col++ : -1;
  int first_surplus = col;
  for (const auto* c : rows)
    if (c->rel != Rel::Eq) ++col;
  int cap_slack = any_strict ? col++ : -1;
  int structural = col;

  Simplex sx(structural, pivot_budget);
  int surplus = first_surplus;
  for (const auto* c : rows) {
    std::vector<Rat> row(structural, Rat(0));
    for (int i = 0; i < nvars; ++i) {
      if (is_zero(c->coeffs[i])) continue;
      row[pos_col[i]] = c->coeffs[i];
      if (neg_col[i] >= 0) row[neg_col[i]] = -c->coeffs[i];
    }
    switch (c->rel) {
      case Rel::Eq: break;
      case Rel::Ge: row[surplus++] = -1; break;
      case Rel::Gt:
        row[s_col] = -1;
        row[surplus++] = -1;
        break;
    }
    sx.add_row(std::move(row), c->rhs);
  }
  if (any_strict) {
    std::vector<Rat> row(structural, Rat(0));
    row[s_col] = 1;
    row[cap_slack] = 1;
    sx.add_row(std::move(row), Rat(1));
  }

  if (!is_zero(sx.phase1())) return FeasibilityResult{false, {}};
  sx.mark_phase2();

  if (any_strict) {
    std::vector<Rat> objective(structural, Rat(0));
    objective[s_col] = -1;  // maximize s
    Rat neg_s = sx.phase2(objective);
    if (!is_negative(neg_s)) return FeasibilityResult{false, {}};
  }

  std::vector<Rat> z = sx.solution(structural);
  FeasibilityResult result;
  result.feasible = true;
  for (int i = 0; i < nvars; ++i) {
    Rat v = z[pos_col[i]];
    if (neg_col[i] >= 0) v -= z[neg_col[i]];
    result.assignment[sys.variables[i]] = v;
  }
  if (!satisfies_all(sys, result.assignment))
    throw Error("InternalError", "simplex witness fails substitution check");
  return result;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination

namespace {

struct FMRow {
  std::vector<Rat> coeffs;
  bool strict;
  Rat rhs;  // sum coeffs * x  >=  rhs  (or > if strict)
};

struct EqSubst {
  int var;
  std::vector<Rat> coeffs;  // of the original equality row
  Rat rhs;
};

constexpr std::size_t kFmRowCap = 200000;

// Scales each row so its first nonzero coefficient is +-1, keeps only the
// strongest row per coefficient vector, drops trivially-true ground rows,
// and reports a trivially-false one. Keeps the row count from squaring away.
bool simplify_rows(std::vector<FMRow>& rows, int nvars) {
  std::map<std::vector<Rat>, std::pair<Rat, bool>> strongest;
  std::vector<FMRow> ground;
  for (auto& r : rows) {
    int lead = -1;
    for (int j = 0; j < nvars; ++j)
      if (!is_zero(r.coeffs[j])) {
        lead = j;
        break;
      }
    if (lead < 0) {
      bool ok = r.strict ? is_negative(r.rhs) : !is_positive(r.rhs);
      if (!ok) return false;
      continue;
    }
    Rat scale = abs(r.coeffs[lead]);
    for (int j = lead; j < nvars; ++j) r.coeffs[j] /= scale;
    r.rhs /= scale;
    auto it = strongest.find(r.coeffs);
    if (it == strongest.end()) {
      strongest.emplace(std::move(r.coeffs), std::make_pair(std::move(r.rhs), r.strict));
    } else if (r.rhs > it->second.first ||
               (r.rhs == it->second.first && r.strict && !it->second.second)) {
      it->second = {std::move(r.rhs), r.strict};
    }
  }
  rows.clear();
  for (auto& [coeffs, bound] : strongest)
    rows.push_back(FMRow{coeffs, bound.second, bound.first});
  return true;
}

}  // namespace

FeasibilityResult feasible_by_elimination(const LinearConstraintSystem& sys,
                                          int max_variables) {
  int nvars = static_cast<int>(sys.variables.size());
  if (nvars > max_variables)
    throw TooManyVariables(std::to_string(nvars) + " variables (cap " +
                           std::to_string(max_variables) + ")");

  std::vector<FMRow> rows;
  std::vector<FMRow> equalities;
  for (const auto& c : sys.constraints) {
    if (c.rel == Rel::Eq)
      equalities.push_back(FMRow{c.coeffs, false, c.rhs});
    else
      rows.push_back(FMRow{c.coeffs, c.rel == Rel::Gt, c.rhs});
  }

  // Substitute equalities out first.
  std::vector<EqSubst> substitutions;
  while (true) {
    std::size_t pick = equalities.size();
    int var = -1;
    for (std::size_t e = 0; e < equalities.size() && var < 0; ++e)
      for (int j = 0; j < nvars; ++j)
        if (!is_zero(equalities[e].coeffs[j])) {
          pick = e;
          var = j;
          break;
        }
    if (var < 0) break;
    FMRow eq = equalities[pick];
    equalities.erase(equalities.begin() + static_cast<long>(pick));
    auto reduce = [&](FMRow& r) {
      if (is_zero(r.coeffs[var])) return;
      Rat factor = r.coeffs[var] / eq.coeffs[var];
      for (int j = 0; j < nvars; ++j) r.coeffs[j] -= factor * eq.coeffs[j];
      r.rhs -= factor * eq.rhs;
    };
    for (auto& r : rows) reduce(r);
    for (auto& r : equalities) reduce(r);
    substitutions.push_back(EqSubst{var, eq.coeffs, eq.rhs});
  }
  for (const auto& e : equalities)
    if (!is_zero(e.rhs)) return FeasibilityResult{false, {}};

  std::vector<bool> substituted(nvars, false);
  for (const auto& s : substitutions) substituted[s.var] = true;

  // Eliminate the remaining variables one by one.
  struct VarBounds {
    int var;
    std::vector<FMRow> lower, upper;  // rows with coeff > 0 / < 0 on var
  };
  if (!simplify_rows(rows, nvars)) return FeasibilityResult{false, {}};
  std::vector<VarBounds> eliminated;
  for (int var = 0; var < nvars; ++var) {
    if (substituted[var]) continue;
    VarBounds vb;
    vb.var = var;
    std::vector<FMRow> rest;
    for (auto& r : rows) {
      if (is_zero(r.coeffs[var]))
        rest.push_back(std::move(r));
      else if (is_positive(r.coeffs[var]))
        vb.lower.push_back(std::move(r));
      else
        vb.upper.push_back(std::move(r));
    }
    for (const auto& lo : vb.lower)
      for (const auto& up : vb.upper) {
        FMRow combined;
        combined.strict = lo.strict || up.strict;
        combined.coeffs.resize(nvars);
        Rat wl = -up.coeffs[var], wu = lo.coeffs[var];
        for (int j = 0; j < nvars; ++j)
          combined.coeffs[j] = wl * lo.coeffs[j] + wu * up.coeffs[j];
        combined.rhs = wl * lo.rhs + wu * up.rhs;
        rest.push_back(std::move(combined));
        if (rest.size() > kFmRowCap)
          throw ResourceLimit("Fourier-Motzkin row explosion");
      }
    if (!simplify_rows(rest, nvars)) return FeasibilityResult{false, {}};
    rows = std::move(rest);
    eliminated.push_back(std::move(vb));
  }

  // Only ground rows remain, and simplification proved them all true.

  // Back-substitute, most recently eliminated first.
  std::vector<Rat> value(nvars, Rat(0));
  std::vector<bool> assigned(nvars, false);
  auto bound_value = [&](const FMRow& r, int var) {
    Rat rest = 0;
    for (int j = 0; j < nvars; ++j)
      if (j != var && !is_zero(r.coeffs[j])) rest += r.coeffs[j] * value[j];
    return Rat((r.rhs - rest) / r.coeffs[var]);
  };
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo, hi;
    for (const auto& r : it->lower) {
      Rat v = bound_value(r, it->var);
      if (!has_lo || v > lo) {
        lo = v;
        lo_strict = r.strict;
        has_lo = true;
      } else if (v == lo) {
        lo_strict = lo_strict || r.strict;
      }
    }
    for (const auto& r : it->upper) {
      Rat v = bound_value(r, it->var);
      if (!has_hi || v < hi) {
        hi = v;
        hi_strict = r.strict;
        has_hi = true;
      } else if (v == hi) {
        hi_strict = hi_strict || r.strict;
      }
    }
    Rat v;
    if (!has_lo && !has_hi)
      v = 0;
    else if (!has_hi)
      v = lo_strict ? Rat(lo + 1) : lo;
    else if (!has_lo)
      v = hi_strict ? Rat(hi - 1) : hi;
    else if (lo < hi)
      v = (lo + hi) / 2;
    else if (lo == hi && !lo_strict && !hi_strict)
      v = lo;
    else
      throw Error("InternalError", "empty interval after successful elimination");
    value[it->var] = v;
    assigned[it->var] = true;
  }
  for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
    Rat rest = 0;
    for (int j = 0; j < nvars; ++j)
      if (j != it->var && !is_zero(it->coeffs[j])) rest += it->coeffs[j] * value[j];
    value[it->var] = (it->rhs - rest) / it->coeffs[it->var];
  }

  FeasibilityResult result;
  result.feasible = true;
  for (int i = 0; i < nvars; ++i) result.assignment[sys.variables[i]] = value[i];
  if (!satisfies_all(sys, result.assignment))
    throw Error("InternalError", "elimination witness fails substitution check");
  return result;
}

// ---------------------------------------------------------------------------
// Debug dump format

std::string dump(const LinearConstraintSystem& sys) {
  std::ostringstream out;
  for (const auto& c : sys.constraints) {
    bool first = true;
    bool all_zero = true;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
      if (is_zero(c.coeffs[i])) continue;
      if (!first) out << " + ";
      out << rat_str(c.coeffs[i]) << "*" << sys.variables[i];
      first = false;
      all_zero = false;
    }
    if (all_zero) out << "0";
    out << " " << rel_str(c.rel) << " " << rat_str(c.rhs) << "\n";
  }
  return out.str();
}

LinearConstraintSystem parse_system(const std::string& text) {
  LinearConstraintSystem sys;
  std::map<std::string, int> index;
  struct PendingRow {
    std::vector<std::pair<int, Rat>> terms;
    Rel rel;
    Rat rhs;
  };
  std::vector<PendingRow> pending;

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream in(line);
    PendingRow row;
    std::string token;
    bool seen_rel = false;
    while (in >> token) {
      if (token == "+") continue;
      if (token == ">=" || token == ">" || token == "=") {
        row.rel = token == ">=" ? Rel::Ge : (token == ">" ? Rel::Gt : Rel::Eq);
        seen_rel = true;
        std::string rhs;
        if (!(in >> rhs)) throw FormatError("missing right-hand side: " + line);
        row.rhs = parse_rational(rhs);
        continue;
      }
      if (seen_rel) throw FormatError("trailing tokens: " + line);
      if (token == "0") continue;
      auto star = token.find('*');
      if (star == std::string::npos) throw FormatError("bad term '" + token + "'");
      Rat coeff = parse_rational(token.substr(0, star));
      std::string var = token.substr(star + 1);
      if (var.empty()) throw FormatError("bad term '" + token + "'");
      if (!index.count(var)) {
        index[var] = static_cast<int>(sys.variables.size());
        sys.variables.push_back(var);
      }
      row.terms.emplace_back(index[var], coeff);
    }
    if (!seen_rel) throw FormatError("missing relation: " + line);
    pending.push_back(std::move(row));
  }
  for (const auto& row : pending) {
    std::vector<Rat> coeffs(sys.variables.size(), Rat(0));
    for (const auto& [var, coeff] : row.terms) coeffs[static_cast<std::size_t>(var)] += coeff;
    sys.add(std::move(coeffs), row.rel, row.rhs);
  }
  return sys;
}

}  // namespace lin
}  // namespace edlogic
