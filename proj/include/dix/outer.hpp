#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dix/inner.hpp"
#include "dix/lp.hpp"
#include "dix/problem.hpp"
#include "dix/sets.hpp"

namespace dix {

// An ordered cover of the ground server set by (possibly overlapping)
// server groups.
struct Grouping {
    std::vector<ServerSet> groups;
    ServerSet ground;
    std::string label;
};

Grouping make_grouping(std::vector<ServerSet> groups, ServerSet ground, std::string label = "");

// Union of the groups selected by the index mask.
ServerSet pg(const Grouping& g, std::uint32_t group_mask);

enum class SubmodMode { Full, Elemental };

struct OuterOptions {
    SubmodMode submod = SubmodMode::Full;
    bool axiom6 = true;
    // refuse groupings with 2^m * 2^n cells above this
    std::size_t cap_cells = std::size_t{1} << 12;
    // full-pair submodularity generation guard
    std::size_t cap_pairs = std::size_t{1} << 23;
};

// The grouping polymatroidal LP: canonical f(G,K) variables after the
// encoding-equality merge, capacity bounds, monotonicity covers,
// submodularity, conditional-independence equalities, rate constraints.
// Solving it bounds the weighted sum-capacity from above.
LinearProgram grouping_pm_lp(const Problem& p, const Grouping& g, const std::vector<Rat>& weights,
                             const OuterOptions& opts = {});

// Convenience: build and solve; the optimum always exists.
Rat grouping_pm_bound(const Problem& p, const Grouping& g, const std::vector<Rat>& weights,
                      const OuterOptions& opts = {});

// Individual-touch specialization built from its own axiom set
// (f(G,K) = f(K,K) for K in G, bound by the touch-both capacity); used to
// cross-check the generic generator.
LinearProgram touch_specialized_lp(const Problem& p, const std::vector<Rat>& weights,
                                   SubmodMode submod = SubmodMode::Full);

// Single-set-function LP of the all-server grouping.
LinearProgram all_server_lp(const Problem& p, const std::vector<Rat>& weights);
Rat all_server_bound(const Problem& p, const std::vector<Rat>& weights);

// The earlier per-L outer bound: independent blocks f_L for every
// L c [n], all rate constraints imposed jointly.
Rat fl_bound(const Problem& p, const std::vector<Rat>& weights);

// Inequality system of the all-server region over g(K) and R variables;
// eliminate_vars lists the g-variable columns for FME.
struct RegionSystem {
    IneqSystem system;
    std::vector<int> eliminate_vars;
};
RegionSystem all_server_region(const Problem& p);

// --- grouping generators (ground defaults to the active servers) -----------

Grouping individual_touch_grouping(const Problem& p, std::optional<ServerSet> ground = std::nullopt);
Grouping aggregate_touch_grouping(const Problem& p, const std::vector<MsgSet>& parts,
                                  std::optional<ServerSet> ground = std::nullopt);
// Maximal 2-fd grouping {ground \ T_{K,K'}, ground n T_{K,K'}}.
Grouping fd2_grouping(const Problem& p, MsgSet k, MsgSet kp, std::optional<ServerSet> ground = std::nullopt);
// m-part grouping from an explicit partition of the ground servers.
Grouping mfd_grouping(std::vector<ServerSet> parts, ServerSet ground, std::string label = "mfd");
Grouping single_server_grouping(ServerSet ground);
Grouping all_server_grouping(ServerSet ground);

// True iff every coarse group is the union of the fine groups inside it.
bool is_refinement(const Grouping& fine, const Grouping& coarse);

// Pairwise intersections, empty groups dropped, duplicates removed.
Grouping intersect_groupings(const Grouping& a, const Grouping& b);

// --- search -----------------------------------------------------------------

enum class GroupingFamily { AllServer, IndividualTouch, Fd2AllPairs, TouchCrossFd2 };

struct SearchResult {
    Rat value;
    Grouping grouping;
    std::vector<std::string> skipped;  // members that exceeded a cap
};

SearchResult search_upper(const Problem& p, GroupingFamily family, const std::vector<Rat>& weights,
                          const OuterOptions& opts = {});

const char* family_name(GroupingFamily f);

}  // namespace dix
