#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dix/fme.hpp"
#include "dix/lp.hpp"
#include "dix/problem.hpp"
#include "dix/sets.hpp"

namespace dix {

// Thrown when a generator would exceed its configured constraint or
// variable budget; receiver is 1-based when applicable, else 0.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(std::string msg, int receiver_ = 0)
        : std::runtime_error(std::move(msg)), receiver(receiver_) {}
    int receiver;
};

// Per-receiver decoding server group P_i and decoding message set D_i.
struct DecodingConfig {
    std::vector<ServerSet> server_groups;  // P_i
    std::vector<MsgSet> decode_sets;       // D_i
};

void validate_config(const Problem& p, const DecodingConfig& cfg);

// Delta_i: the part of D_i the servers in P_i can actually deliver.
MsgSet delta(const Problem& p, const DecodingConfig& cfg, int i);

enum class FirstStepForm {
    Auto,  // per receiver, whichever of M/Q enumerates fewer subsets
    M,     // composite-index collections M (the direct theorem form)
    Q,     // server subsets Q (the equivalent form)
};

struct InnerOptions {
    FirstStepForm form = FirstStepForm::Auto;
    // Bound on 2^k subset enumerations per receiver.
    std::size_t max_enumeration = std::size_t{1} << 21;
    std::size_t max_vars = 1u << 20;
    // Skip constraints implied by a coverage-equal superset (the region
    // is unchanged; the LPs shrink by orders of magnitude).
    bool prune_dominated = true;
};

// Achievability LP for a fixed decoding configuration: maximize the
// weighted sum rate subject to the two-step decoding constraints.
LinearProgram fixed_lp(const Problem& p, const DecodingConfig& cfg, const std::vector<Rat>& weights,
                       const InnerOptions& opts = {});

// Same region generated through server-subset constraints only.
LinearProgram fixed_lp_q_form(const Problem& p, const DecodingConfig& cfg, const std::vector<Rat>& weights,
                              const InnerOptions& opts = {});

// Rate region with composite rates pinned to the capacities; no S
// variables remain.
IneqSystem cor4_region(const Problem& p, const std::vector<MsgSet>& decode_sets);

// Decoding message set heuristic: start from {i} and absorb D*_j
// whenever A_j is covered by A_i u D*_i, dropping A_i after each union.
std::vector<MsgSet> dstar(const Problem& p);
std::vector<MsgSet> dstar_reversed_scan(const Problem& p);  // confluence check

// P_i = active servers, D = dstar.
DecodingConfig default_config(const Problem& p);

// Fractional composite coding over an explicit configuration list:
// per-configuration rate/composite/capacity variables, linked by
// rate sums and capacity splits.
LinearProgram fractional_lp(const Problem& p, const std::vector<DecodingConfig>& configs,
                            const std::vector<Rat>& weights, const InnerOptions& opts = {});

// Sum-rate of cooperative composite coding for one decoding message set
// tuple: every receiver uses the same group P, fractionally over the
// given family. An empty family defaults to all nonempty subsets of the
// active servers.
Rat ccc_sum_rate(const Problem& p, const std::vector<MsgSet>& decode_sets,
                 std::vector<ServerSet> server_group_family = {}, const InnerOptions& opts = {});

// All decoding message set tuples (D_i c [n]\A_i, i in D_i); the
// enumeration the CCC convex hull maximizes over.
std::vector<std::vector<MsgSet>> all_decode_tuples(const Problem& p, std::size_t cap = 1u << 20);

std::vector<Rat> unit_weights(int n);

}  // namespace dix
