#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dix/fdg.hpp"
#include "dix/inner.hpp"
#include "dix/outer.hpp"
#include "dix/problem.hpp"

namespace dix::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kParseError = 2;
inline constexpr int kCapExceeded = 3;
inline constexpr int kInternalError = 4;

// "@path" loads a file; anything else is taken literally.
std::string load_arg(const std::string& arg);

// Configuration blocks separated by "---" lines; within a block
//   P <i>: 1,2 ; 1,3,4      (omitted: all active servers)
//   D <i>: 1,3              (omitted: D*_i)
// A block may also write "P:" / "D:" rows without an index applying to
// every receiver.
std::vector<DecodingConfig> parse_config_text(const Problem& p, const std::string& text);

// Grouping mini-language:
//   allserver | singleserver | touch | touch:4|1,2,3 | fd2:1;4
//   groups 1,2 ; 1,4 | 1,3,4            (groups split by '|', servers by ';')
//   intersect:<name>,<name>             (names defined in a grouping file)
// A grouping file holds "name = spec" lines; select with "@file#name"
// (default: the last definition).
Grouping parse_grouping_spec(const Problem& p, const std::string& spec);
Grouping parse_grouping_arg(const Problem& p, const std::string& arg);

// "U=x1;y1,2|W=x2|Z=x3;x4" (vertex lists split by ';'; U may be empty)
SeparationQuery parse_fdg_query(const Fdg& g, const std::string& text);

std::vector<Rat> parse_weights(const Problem& p, const std::string& text);

struct SumcapResult {
    Rat inner;
    Rat outer;
    bool established = false;
    std::string grouping;        // label of the grouping attaining the outer value
    std::string outer_progress;  // "allserver=22 touch=21" style trace
    long ms_inner = 0;
    long ms_outer = 0;
};

// Inner value with the default configuration, then the grouping ladder
// all_server -> individual_touch -> fd2_all_pairs, stopping as soon as
// the bounds meet. canned lists extra groupings always evaluated last
// (used for the catalog problem whose tight grouping is known).
SumcapResult sumcap(const Problem& p, const OuterOptions& outer_opts, const std::vector<Grouping>& canned = {});

struct CatalogRow {
    int problem_no = 0;
    std::string sequence;
    Rat inner;
    Rat outer;
    Rat expected;
    bool established = false;
    bool inner_matches = false;
    bool outer_matches = false;
    std::string grouping_used;
    long ms_inner = 0;
    long ms_outer = 0;
};

struct CatalogSummary {
    std::vector<CatalogRow> rows;
    int inner_matched = 0;
    int outer_matched = 0;
    int established = 0;
    int matched_by_allserver_or_touch = 0;
    std::vector<int> unresolved;  // problem numbers with outer > expected
};

// Runs sumcap over catalog problems (all when sample_every = 1) with a
// bounded worker pool; rows come back ordered by problem number.
CatalogSummary run_catalog(int jobs, const OuterOptions& outer_opts, int sample_every = 1);

void write_catalog_csv(const CatalogSummary& s, std::ostream& os, bool with_times);
void write_catalog_json(const CatalogSummary& s, std::ostream& os, bool with_times);

int run_main(int argc, char** argv);

}  // namespace dix::cli
