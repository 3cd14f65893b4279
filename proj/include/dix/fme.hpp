#pragma once

#include <string>
#include <vector>

#include "dix/lp.hpp"

namespace dix {

// A pure-inequality system: every row reads  sum coef*var <= rhs.
// Variables are free unless a row pins them (R >= 0 is stored as -R <= 0).
struct IneqSystem {
    std::vector<std::string> var_names;
    std::vector<Constraint> rows;  // rel is always Le

    int add_var(std::string name);
    void add_le(std::vector<LinTerm> terms, Rat rhs);
    std::string row_to_string(const Constraint& c) const;
};

// True iff dropping c from system loses nothing: max of c's lhs subject to
// the remaining rows stays <= c's rhs (an infeasible rest counts as
// redundant, an unbounded direction does not).
bool is_redundant(const Constraint& c, const IneqSystem& system, std::size_t skip_index);
bool is_redundant(const Constraint& c, const IneqSystem& system);

struct FmeOptions {
    bool prune = true;            // LP-based redundancy pruning per round
    std::size_t max_rows = 200000;
};

// Projects the feasible set onto the variables not listed in vars.
// Eliminated variables keep their columns (zeroed) so indices are stable.
IneqSystem fme_eliminate(IneqSystem system, const std::vector<int>& vars, const FmeOptions& opts = {});

// Drops rows proven redundant by LP checks, scanning in order.
void prune_redundant(IneqSystem& system);

}  // namespace dix
