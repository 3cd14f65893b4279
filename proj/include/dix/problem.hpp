#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dix/rational.hpp"
#include "dix/sets.hpp"

namespace dix {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A distributed index coding instance: n messages/receivers, side
// information A_i per receiver, and a capacity per nonempty server.
// Immutable after construction; share freely across threads.
class Problem {
public:
    Problem(int n, std::vector<MsgSet> side_info, std::vector<Rat> capacities);

    int n() const { return n_; }
    MsgSet a(int i) const { return side_info_[static_cast<std::size_t>(i - 1)]; }
    // B_i = [n] \ (A_i u {i})
    MsgSet b(int i) const { return full_mask(n_) & ~(a(i) | msg_bit(i)); }
    const Rat& capacity(MsgSet server) const { return capacity_[server]; }

    ServerSet active_servers() const;
    Rat cap_sum(const ServerSet& servers) const;

    std::string serialize() const;  // side information sequence only
    bool uniform_capacities() const;

private:
    int n_;
    std::vector<MsgSet> side_info_;
    std::vector<Rat> capacity_;  // indexed by server mask; [0] = 0
};

// Parses "(1|-),(2|3),(3|2)". Additional lines may set capacities:
//   default: 2
//   1,3: 5/2
// Unlisted nonempty servers get the default (1 when no default line).
Problem parse_problem(std::string_view text, std::optional<int> n = std::nullopt);

MsgSet interfering_set(const Problem& p, int i);

struct CatalogEntry {
    int problem_no;          // 1..218
    std::string sequence;    // side information sequence
    Rat expected_sumcap;
};

// The 218 four-message problems with unit capacities and their
// sum-capacities.
const std::vector<CatalogEntry>& catalog();
Problem catalog_problem(int problem_no);

}  // namespace dix
