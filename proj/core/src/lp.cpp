#include "probkb/lp.hpp"

#include <map>
#include <sstream>

#include "probkb/errors.hpp"

namespace probkb {

namespace {

struct Row {
  std::vector<Rational> a;  // dense over all tableau columns
  Rational rhs;
  int orig = -1;       // original constraint index
  bool flipped = false;  // row was negated to make rhs nonnegative
  int ref_col = -1;    // column whose original form is +e_row (slack or artificial)
};

// Always maximizes; Min is handled by the caller via negation.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const std::vector<Rational>& objective,
          const SolveOptions& opts)
      : lp_(lp), opts_(opts) {
    n_ = lp.num_vars;
    if (static_cast<int>(objective.size()) != n_)
      throw StructuralError("objective size does not match num_vars");
    build(objective);
  }

  LPOutcome run() {
    if (!phase1()) return LPOutcome{LPStatus::Infeasible, {}, {}, {}};
    drop_artificial_basics();
    if (!phase2()) return LPOutcome{LPStatus::Unbounded, {}, {}, {}};
    return extract();
  }

 private:
  void build(const std::vector<Rational>& objective) {
    int m = static_cast<int>(lp_.constraints.size());
    rows_.reserve(m);
    // First pass: normalized copies of the rows.
    std::vector<Relation> rel(m);
    for (int i = 0; i < m; ++i) {
      const auto& c = lp_.constraints[i];
      Row row;
      row.orig = i;
      row.a.assign(n_, Rational(0));
      for (const auto& [var, coeff] : c.coeffs) {
        if (var < 0 || var >= n_) throw StructuralError("variable id out of range");
        row.a[var] += coeff;
      }
      row.rhs = c.rhs;
      rel[i] = c.rel;
      if (row.rhs < 0) {
        for (auto& v : row.a) v = -v;
        row.rhs = -row.rhs;
        row.flipped = true;
        if (rel[i] == Relation::LessEq)
          rel[i] = Relation::GreaterEq;
        else if (rel[i] == Relation::GreaterEq)
          rel[i] = Relation::LessEq;
      }
      rows_.push_back(std::move(row));
    }
    // Second pass: slack, surplus, artificial columns.
    total_cols_ = n_;
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      switch (rel[i]) {
        case Relation::LessEq: {
          int col = total_cols_++;
          col_meta_.push_back({i, false});
          rows_[i].ref_col = col;
          basis_[i] = col;
          break;
        }
        case Relation::GreaterEq: {
          int surplus = total_cols_++;
          col_meta_.push_back({i, false});
          int art = total_cols_++;
          col_meta_.push_back({i, true});
          rows_[i].ref_col = art;
          basis_[i] = art;
          surplus_of_row_[i] = surplus;
          break;
        }
        case Relation::Eq: {
          int art = total_cols_++;
          col_meta_.push_back({i, true});
          rows_[i].ref_col = art;
          basis_[i] = art;
          break;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      rows_[i].a.resize(total_cols_, Rational(0));
      if (rows_[i].ref_col >= 0) rows_[i].a[rows_[i].ref_col] = 1;
      auto it = surplus_of_row_.find(i);
      if (it != surplus_of_row_.end()) rows_[i].a[it->second] = -1;
    }
    obj_.assign(total_cols_, Rational(0));
    for (int j = 0; j < n_; ++j) obj_[j] = objective[j];
  }

  bool is_artificial(int col) const {
    return col >= n_ && col_meta_[col - n_].second;
  }

  Rational reduced_cost(const std::vector<Rational>& c, int col) const {
    Rational rc = c[col];
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb != 0 && rows_[i].a[col] != 0) rc -= cb * rows_[i].a[col];
    }
    return rc;
  }

  void pivot(int row, int col) {
    if (++pivots_ > opts_.pivot_limit)
      throw ResourceLimitError("simplex pivot limit exceeded");
    Row& pr = rows_[row];
    Rational p = pr.a[col];
    for (auto& v : pr.a)
      if (v != 0) v /= p;
    pr.rhs /= p;
    pr.a[col] = 1;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      Rational f = rows_[i].a[col];
      if (f == 0) continue;
      for (int j = 0; j < total_cols_; ++j)
        if (pr.a[j] != 0) rows_[i].a[j] -= f * pr.a[j];
      rows_[i].rhs -= f * pr.rhs;
      rows_[i].a[col] = 0;
    }
    basis_[row] = col;
  }

  // Bland's rule: entering = lowest-index improving column; leaving =
  // min-ratio row, ties broken by lowest basic variable index.
  // Returns false on unboundedness.
  bool optimize(const std::vector<Rational>& c, bool allow_artificial_entering) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < total_cols_; ++j) {
        if (!allow_artificial_entering && is_artificial(j)) continue;
        bool basic = false;
        for (int b : basis_)
          if (b == j) { basic = true; break; }
        if (basic) continue;
        if (reduced_cost(c, j) > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      Rational best_ratio;
      for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].a[enter] <= 0) continue;
        Rational ratio = rows_[i].rhs / rows_[i].a[enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  bool phase1() {
    bool any_art = false;
    std::vector<Rational> c(total_cols_, Rational(0));
    for (int j = n_; j < total_cols_; ++j)
      if (is_artificial(j)) {
        c[j] = -1;  // maximize -(sum of artificials)
        any_art = true;
      }
    if (!any_art) return true;
    if (!optimize(c, true)) throw StructuralError("phase 1 cannot be unbounded");
    Rational v = 0;
    for (size_t i = 0; i < rows_.size(); ++i)
      if (c[basis_[i]] != 0) v += c[basis_[i]] * rows_[i].rhs;
    return v == 0;
  }

  // Pivot zero-valued artificials out of the basis; rows where that is
  // impossible are redundant and get dropped.
  void drop_artificial_basics() {
    for (size_t i = 0; i < rows_.size();) {
      if (!is_artificial(basis_[i])) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < total_cols_; ++j) {
        if (is_artificial(j)) continue;
        if (rows_[i].a[j] != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
        ++i;
      } else {
        dropped_.push_back(rows_[i].orig);
        rows_.erase(rows_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  bool phase2() { return optimize(obj_, false); }

  LPOutcome extract() {
    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.witness.assign(n_, Rational(0));
    for (size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) out.witness[basis_[i]] = rows_[i].rhs;
    out.value = 0;
    for (int j = 0; j < n_; ++j)
      if (obj_[j] != 0) out.value += obj_[j] * out.witness[j];
    // y = c_B B^{-1}, read through each row's reference column (+e_row).
    out.duals.assign(lp_.constraints.size(), Rational(0));
    for (const Row& row : rows_) {
      Rational y = 0;
      for (size_t i = 0; i < rows_.size(); ++i) {
        const Rational& cb = obj_[basis_[i]];
        if (cb != 0 && rows_[i].a[row.ref_col] != 0) y += cb * rows_[i].a[row.ref_col];
      }
      out.duals[row.orig] = row.flipped ? Rational(-y) : y;
    }
    return out;
  }

  const LinearProgram& lp_;
  SolveOptions opts_;
  int n_ = 0;
  int total_cols_ = 0;
  std::vector<Row> rows_;
  std::vector<int> basis_;
  std::vector<std::pair<int, bool>> col_meta_;  // (row, is_artificial) for aux columns
  std::map<int, int> surplus_of_row_;
  std::vector<Rational> obj_;
  std::vector<int> dropped_;
  long pivots_ = 0;
};

}  // namespace

LPOutcome solve_lp(const LinearProgram& lp, const std::vector<Rational>& objective,
                   Sense sense, const SolveOptions& opts) {
  if (sense == Sense::Max) return Simplex(lp, objective, opts).run();
  std::vector<Rational> neg(objective.size());
  for (size_t i = 0; i < objective.size(); ++i) neg[i] = -objective[i];
  LPOutcome out = Simplex(lp, neg, opts).run();
  if (out.status == LPStatus::Optimal) {
    out.value = -out.value;
    for (auto& y : out.duals) y = -y;
  }
  return out;
}

bool feasible(const LinearProgram& lp) {
  std::vector<Rational> zero(lp.num_vars, Rational(0));
  return solve_lp(lp, zero, Sense::Max).status == LPStatus::Optimal;
}

bool verify_outcome(const LinearProgram& lp, const std::vector<Rational>& objective,
                    Sense sense, const LPOutcome& outcome) {
  if (outcome.status != LPStatus::Optimal) return false;
  if (static_cast<int>(outcome.witness.size()) != lp.num_vars) return false;
  if (outcome.duals.size() != lp.constraints.size()) return false;
  const auto& x = outcome.witness;
  const auto& y = outcome.duals;
  for (const auto& v : x)
    if (v < 0) return false;

  // Primal feasibility, dual sign conditions, row complementary slackness.
  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    Rational lhs = 0;
    for (const auto& [var, coeff] : c.coeffs) lhs += coeff * x[var];
    bool tight = lhs == c.rhs;
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        if ((sense == Sense::Max && y[i] < 0) || (sense == Sense::Min && y[i] > 0))
          return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        if ((sense == Sense::Max && y[i] > 0) || (sense == Sense::Min && y[i] < 0))
          return false;
        break;
      case Relation::Eq:
        if (!tight) return false;
        break;
    }
    if (!tight && y[i] != 0) return false;
  }

  // Objective value, dual feasibility and variable complementary slackness.
  Rational val = 0;
  for (int j = 0; j < lp.num_vars; ++j) val += objective[j] * x[j];
  if (val != outcome.value) return false;
  std::vector<Rational> yta(lp.num_vars, Rational(0));
  for (size_t i = 0; i < lp.constraints.size(); ++i)
    for (const auto& [var, coeff] : lp.constraints[i].coeffs) yta[var] += y[i] * coeff;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (sense == Sense::Max) {
      if (yta[j] < objective[j]) return false;
      if (x[j] > 0 && yta[j] != objective[j]) return false;
    } else {
      if (yta[j] > objective[j]) return false;
      if (x[j] > 0 && yta[j] != objective[j]) return false;
    }
  }
  return true;
}

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream out;
  out << "vars " << lp.num_vars << "\n";
  for (const auto& c : lp.constraints) {
    bool first = true;
    for (const auto& [var, coeff] : c.coeffs) {
      if (!first) out << " + ";
      out << to_fraction(coeff) << "*x" << var;
      first = false;
    }
    if (first) out << "0";
    switch (c.rel) {
      case Relation::LessEq: out << " <= "; break;
      case Relation::Eq: out << " = "; break;
      case Relation::GreaterEq: out << " >= "; break;
    }
    out << to_fraction(c.rhs) << "\n";
  }
  return out.str();
}

}  // namespace probkb
