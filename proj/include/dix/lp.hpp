#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dix/rational.hpp"

namespace dix {

enum class Rel { Le, Eq };
enum class Sense { Maximize, Minimize };

struct LinTerm {
    int var;
    Rat coef;
};

struct Constraint {
    std::vector<LinTerm> terms;  // sorted by var, merged, no zero coefs
    Rel rel = Rel::Le;
    Rat rhs;
};

// Sparse exact-rational LP. Duplicate constraints (same canonical term
// vector, relation and rhs) are dropped on insertion.
class LinearProgram {
public:
    int add_var(std::string name, bool nonneg = true);
    int num_vars() const { return static_cast<int>(names_.size()); }
    const std::string& var_name(int v) const { return names_[v]; }
    bool var_nonneg(int v) const { return nonneg_[v]; }

    // Returns false when the constraint was a duplicate (or trivially
    // empty with a consistent rhs) and was not stored.
    bool add(std::vector<LinTerm> terms, Rel rel, Rat rhs);
    bool add_le(std::vector<LinTerm> terms, Rat rhs) { return add(std::move(terms), Rel::Le, std::move(rhs)); }
    bool add_eq(std::vector<LinTerm> terms, Rat rhs) { return add(std::move(terms), Rel::Eq, std::move(rhs)); }

    void set_objective(Sense sense, std::vector<LinTerm> terms);
    Sense sense() const { return sense_; }
    const std::vector<LinTerm>& objective() const { return objective_; }

    const std::vector<Constraint>& constraints() const { return rows_; }
    std::size_t num_constraints() const { return rows_.size(); }

    // One constraint per line, exact fractions.
    void dump(std::ostream& os) const;

private:
    std::vector<std::string> names_;
    std::vector<bool> nonneg_;
    std::vector<Constraint> rows_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> rows_by_hash_;
    std::vector<LinTerm> objective_;
    Sense sense_ = Sense::Maximize;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value;                 // valid when Optimal
    std::vector<Rat> primal;   // per declared variable, valid when Optimal
    long pivots = 0;
    std::vector<std::pair<int, int>> pivot_log;  // (entering col, leaving row) in solver space
};

struct SolveOptions {
    // Pivot on the dual when constraints outnumber variables by this
    // factor; the axiom generators emit LPs that are extremely tall.
    bool allow_dual = true;
    bool record_pivots = false;
    // Work on an actively grown row subset when the LP is very tall;
    // rows violated by the trial optimum are pulled in until none are,
    // so the certificate is exact for the whole system.
    bool lazy_rows = true;
};

LpResult lp_solve(const LinearProgram& lp, const SolveOptions& opts = {});

}  // namespace dix
