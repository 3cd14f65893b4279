#include "dix/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dix/fme.hpp"

namespace dix::cli {

namespace {

long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

MsgSet parse_msgs(const Problem& p, const std::string& text, const char* what) {
    MsgSet out = 0;
    for (const auto& tok : split(text, ',')) {
        std::string t = trim(tok);
        if (t.empty()) throw ParseError(std::string("empty index in ") + what);
        char* end = nullptr;
        long v = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0' || v < 1 || v > p.n())
            throw ParseError(std::string("bad message index '") + t + "' in " + what);
        out |= msg_bit(static_cast<int>(v));
    }
    return out;
}

ServerSet parse_server_list(const Problem& p, const std::string& text, const char* what) {
    ServerSet out(p.n());
    for (const auto& tok : split(text, ';')) {
        std::string t = trim(tok);
        if (t.empty()) continue;
        out.insert(parse_msgs(p, t, what));
    }
    return out;
}

}  // namespace

std::string load_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot open file " + arg.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<DecodingConfig> parse_config_text(const Problem& p, const std::string& text) {
    int n = p.n();
    ServerSet act = p.active_servers();
    std::vector<MsgSet> dst = dstar(p);

    struct Block {
        std::vector<std::optional<ServerSet>> groups;
        std::vector<std::optional<MsgSet>> decode;
        bool any = false;
    };
    std::vector<Block> blocks(1);
    blocks.back().groups.resize(static_cast<std::size_t>(n));
    blocks.back().decode.resize(static_cast<std::size_t>(n));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "---") {
            blocks.emplace_back();
            blocks.back().groups.resize(static_cast<std::size_t>(n));
            blocks.back().decode.resize(static_cast<std::size_t>(n));
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("config line needs ':': " + line);
        std::string head = trim(line.substr(0, colon)), body = trim(line.substr(colon + 1));
        if (head.empty()) throw ParseError("config line needs P or D: " + line);
        char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(head[0])));
        if (kind != 'P' && kind != 'D') throw ParseError("config rows start with P or D: " + line);
        std::string idx = trim(head.substr(1));
        int lo = 1, hi = n;
        if (!idx.empty()) {
            char* end = nullptr;
            long v = std::strtol(idx.c_str(), &end, 10);
            if (end == idx.c_str() || *end != '\0' || v < 1 || v > n) throw ParseError("bad receiver index: " + head);
            lo = hi = static_cast<int>(v);
        }
        Block& blk = blocks.back();
        blk.any = true;
        for (int i = lo; i <= hi; ++i) {
            if (kind == 'P')
                blk.groups[static_cast<std::size_t>(i - 1)] = parse_server_list(p, body, "P row");
            else
                blk.decode[static_cast<std::size_t>(i - 1)] = parse_msgs(p, body, "D row");
        }
    }
    std::vector<DecodingConfig> out;
    for (const auto& blk : blocks) {
        if (&blk != &blocks.front() && !blk.any) continue;  // ignore trailing separator
        DecodingConfig cfg;
        for (int i = 1; i <= n; ++i) {
            cfg.server_groups.push_back(blk.groups[static_cast<std::size_t>(i - 1)].value_or(act));
            cfg.decode_sets.push_back(blk.decode[static_cast<std::size_t>(i - 1)].value_or(dst[static_cast<std::size_t>(i - 1)]));
        }
        validate_config(p, cfg);
        out.push_back(std::move(cfg));
    }
    return out;
}

namespace {

Grouping parse_grouping_named(const Problem& p, const std::string& spec_in,
                              const std::map<std::string, Grouping>& names) {
    std::string spec = trim(spec_in);
    if (auto it = names.find(spec); it != names.end()) return it->second;
    ServerSet ground = p.active_servers();
    if (spec == "allserver") return all_server_grouping(ground);
    if (spec == "singleserver") return single_server_grouping(ground);
    if (spec == "touch") return individual_touch_grouping(p);
    if (spec.rfind("touch:", 0) == 0) {
        std::vector<MsgSet> parts;
        for (const auto& part : split(spec.substr(6), '|')) parts.push_back(parse_msgs(p, trim(part), "touch parts"));
        return aggregate_touch_grouping(p, parts);
    }
    if (spec.rfind("fd2:", 0) == 0) {
        auto parts = split(spec.substr(4), ';');
        if (parts.size() != 2) throw ParseError("fd2 spec needs two ';'-separated message lists");
        return fd2_grouping(p, parse_msgs(p, trim(parts[0]), "fd2"), parse_msgs(p, trim(parts[1]), "fd2"));
    }
    if (spec.rfind("intersect:", 0) == 0) {
        auto parts = split(spec.substr(10), ',');
        if (parts.size() != 2) throw ParseError("intersect spec needs two comma-separated grouping names");
        return intersect_groupings(parse_grouping_named(p, parts[0], names), parse_grouping_named(p, parts[1], names));
    }
    if (spec.rfind("groups", 0) == 0) {
        std::vector<ServerSet> groups;
        for (const auto& g : split(spec.substr(6), '|')) {
            ServerSet s = parse_server_list(p, trim(g), "group");
            if (!s.empty()) groups.push_back(std::move(s));
        }
        ServerSet ground_from_groups(p.n());
        for (const auto& g : groups) ground_from_groups |= g;
        // a valid grouping covers the active servers (or all servers)
        if (!(ground_from_groups == ground) && !(ground_from_groups == all_servers(p.n())))
            throw ParseError("invalid grouping: groups must cover the active servers");
        return make_grouping(std::move(groups), std::move(ground_from_groups), "groups");
    }
    throw ParseError("unknown grouping spec: " + spec);
}

}  // namespace

Grouping parse_grouping_spec(const Problem& p, const std::string& spec) {
    return parse_grouping_named(p, spec, {});
}

Grouping parse_grouping_arg(const Problem& p, const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return parse_grouping_spec(p, arg);
    std::string path = arg.substr(1), want;
    if (auto hash = path.find('#'); hash != std::string::npos) {
        want = path.substr(hash + 1);
        path = path.substr(0, hash);
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open grouping file " + path);
    std::map<std::string, Grouping> names;
    std::string line, last;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("grouping file lines read 'name = spec': " + line);
        std::string name = trim(line.substr(0, eq));
        Grouping g = parse_grouping_named(p, line.substr(eq + 1), names);
        g.label = name;
        names.erase(name);
        names.emplace(name, std::move(g));
        last = name;
    }
    if (names.empty()) throw ParseError("grouping file defines nothing");
    const std::string& key = want.empty() ? last : want;
    auto it = names.find(key);
    if (it == names.end()) throw ParseError("grouping '" + key + "' not defined in " + path);
    return it->second;
}

SeparationQuery parse_fdg_query(const Fdg& g, const std::string& text) {
    SeparationQuery q;
    for (const auto& part : split(text, '|')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("fdg query parts read 'U=...|W=...|Z=...'");
        std::string key = trim(part.substr(0, eq));
        std::vector<int>* dst = nullptr;
        if (key == "U" || key == "u")
            dst = &q.u;
        else if (key == "W" || key == "w")
            dst = &q.w;
        else if (key == "Z" || key == "z")
            dst = &q.z;
        else
            throw ParseError("fdg query set must be U, W or Z");
        for (const auto& tok_raw : split(part.substr(eq + 1), ';')) {
            std::string tok = trim(tok_raw);
            if (tok.empty()) continue;
            if (tok[0] == 'x' || tok[0] == 'X') {
                int i = std::atoi(tok.c_str() + 1);
                if (i < 1 || i > g.n()) throw ParseError("bad message vertex " + tok);
                dst->push_back(g.x_vertex(i));
            } else if (tok[0] == 'y' || tok[0] == 'Y') {
                MsgSet m = 0;
                for (const auto& num : split(tok.substr(1), ',')) {
                    int i = std::atoi(trim(num).c_str());
                    if (i < 1 || i > g.n()) throw ParseError("bad server vertex " + tok);
                    m |= msg_bit(i);
                }
                if (m == 0) throw ParseError("bad server vertex " + tok);
                dst->push_back(g.y_vertex(m));
            } else {
                throw ParseError("vertex tokens start with x or y: " + tok);
            }
        }
    }
    return q;
}

std::vector<Rat> parse_weights(const Problem& p, const std::string& text) {
    if (text.empty()) return unit_weights(p.n());
    std::vector<Rat> out;
    for (const auto& tok : split(text, ',')) {
        auto v = parse_rat(trim(tok));
        if (!v || sgn(*v) < 0) throw ParseError("bad weight '" + tok + "'");
        out.push_back(*v);
    }
    if (out.size() != static_cast<std::size_t>(p.n())) throw ParseError("need exactly n weights");
    return out;
}

SumcapResult sumcap(const Problem& p, const OuterOptions& outer_opts, const std::vector<Grouping>& canned) {
    SumcapResult res;
    auto t0 = std::chrono::steady_clock::now();
    LpResult inner = lp_solve(fixed_lp(p, default_config(p), unit_weights(p.n())));
    if (inner.status != LpStatus::Optimal) throw std::logic_error("inner LP not optimal");
    res.inner = inner.value;
    res.ms_inner = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::ostringstream progress;
    bool have = false;
    auto note = [&](const std::string& label, const Rat& v) {
        if (progress.tellp() > 0) progress << ' ';
        progress << label << '=' << rat_to_string(v);
        if (!have || v < res.outer) {
            res.outer = v;
            res.grouping = label;
            have = true;
        }
    };
    Rat v_allserver = all_server_bound(p, unit_weights(p.n()));
    note("allserver", v_allserver);
    if (res.outer != res.inner) {
        Rat v_touch = grouping_pm_bound(p, individual_touch_grouping(p), unit_weights(p.n()), outer_opts);
        note("touch", v_touch);
    }
    if (res.outer != res.inner) {
        SearchResult s = search_upper(p, GroupingFamily::Fd2AllPairs, unit_weights(p.n()), outer_opts);
        note(s.grouping.label, s.value);
    }
    for (const auto& g : canned) {
        if (res.outer == res.inner) break;
        note(g.label.empty() ? "canned" : g.label, grouping_pm_bound(p, g, unit_weights(p.n()), outer_opts));
    }
    res.ms_outer = ms_since(t0);
    res.established = res.outer == res.inner;
    res.outer_progress = progress.str();
    return res;
}

namespace {

// Tight 2-fd grouping for catalog problem 46, supplied explicitly.
Grouping canned_46_grouping(const Problem& p) {
    ServerSet p1(p.n());
    for (MsgSet j : {msgset_of({1}), msgset_of({2}), msgset_of({3}), msgset_of({4}), msgset_of({1, 2}),
                     msgset_of({1, 3}), msgset_of({2, 4}), msgset_of({3, 4})})
        p1.insert(j);
    ServerSet ground = p.active_servers();
    ServerSet p2 = set_minus(ground, p1);
    return make_grouping({p1, p2}, ground, "fd2-canned");
}

}  // namespace

CatalogSummary run_catalog(int jobs, const OuterOptions& outer_opts, int sample_every) {
    const auto& entries = catalog();
    std::vector<int> todo;
    for (int no = 1; no <= static_cast<int>(entries.size()); no += sample_every) todo.push_back(no);
    std::vector<CatalogRow> rows(todo.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= todo.size()) break;
            int no = todo[idx];
            const CatalogEntry& e = entries[static_cast<std::size_t>(no - 1)];
            Problem p = parse_problem(e.sequence);
            std::vector<Grouping> canned;
            if (no == 46) canned.push_back(canned_46_grouping(p));
            SumcapResult r = sumcap(p, outer_opts, canned);
            CatalogRow row;
            row.problem_no = no;
            row.sequence = e.sequence;
            row.inner = r.inner;
            row.outer = r.outer;
            row.expected = e.expected_sumcap;
            row.established = r.established;
            row.inner_matches = r.inner == e.expected_sumcap;
            row.outer_matches = r.outer == e.expected_sumcap;
            row.grouping_used = r.grouping;
            row.ms_inner = r.ms_inner;
            row.ms_outer = r.ms_outer;
            rows[idx] = std::move(row);
        }
    };
    int workers = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    CatalogSummary s;
    s.rows = std::move(rows);
    for (const auto& row : s.rows) {
        if (row.inner_matches) ++s.inner_matched;
        if (row.outer_matches) ++s.outer_matched;
        if (row.established) ++s.established;
        if (row.outer_matches && (row.grouping_used == "allserver" || row.grouping_used == "touch"))
            ++s.matched_by_allserver_or_touch;
        if (!row.outer_matches) s.unresolved.push_back(row.problem_no);
    }
    return s;
}

void write_catalog_csv(const CatalogSummary& s, std::ostream& os, bool with_times) {
    os << "problem_no,sequence,inner,outer,expected,established,grouping_used,ms_inner,ms_outer\n";
    for (const auto& r : s.rows) {
        os << r.problem_no << ",\"" << r.sequence << "\"," << rat_to_string(r.inner) << ',' << rat_to_string(r.outer)
           << ',' << rat_to_string(r.expected) << ',' << (r.established ? "true" : "false") << ',' << r.grouping_used
           << ',' << (with_times ? r.ms_inner : 0) << ',' << (with_times ? r.ms_outer : 0) << '\n';
    }
}

void write_catalog_json(const CatalogSummary& s, std::ostream& os, bool with_times) {
    nlohmann::json out;
    out["rows"] = nlohmann::json::array();
    for (const auto& r : s.rows) {
        nlohmann::json row;
        row["problem_no"] = r.problem_no;
        row["sequence"] = r.sequence;
        row["inner"] = rat_to_string(r.inner);
        row["outer"] = rat_to_string(r.outer);
        row["expected"] = rat_to_string(r.expected);
        row["established"] = r.established;
        row["grouping_used"] = r.grouping_used;
        row["ms_inner"] = with_times ? r.ms_inner : 0;
        row["ms_outer"] = with_times ? r.ms_outer : 0;
        out["rows"].push_back(std::move(row));
    }
    out["inner_matched"] = s.inner_matched;
    out["outer_matched"] = s.outer_matched;
    out["established"] = s.established;
    out["matched_by_allserver_or_touch"] = s.matched_by_allserver_or_touch;
    out["unresolved"] = s.unresolved;
    os << out.dump(2) << '\n';
}

namespace {

struct CommonArgs {
    std::string problem;
    std::string weights;
    std::string submod;  // empty: full for single bounds, elemental for the catalog
    bool no_axiom6 = false;
    bool dump_lp = false;
    long long cap_vars = 0;  // 0: default
};

OuterOptions outer_options(const CommonArgs& c, bool catalog_default = false) {
    OuterOptions o;
    if (c.submod.empty())
        o.submod = catalog_default ? SubmodMode::Elemental : SubmodMode::Full;
    else
        o.submod = c.submod == "elemental" ? SubmodMode::Elemental : SubmodMode::Full;
    o.axiom6 = !c.no_axiom6;
    if (c.cap_vars > 0) o.cap_cells = static_cast<std::size_t>(c.cap_vars);
    if (const char* cap = std::getenv("DIX_CAP_VARS")) o.cap_cells = static_cast<std::size_t>(std::atoll(cap));
    return o;
}

Problem problem_from_arg(const std::string& arg) {
    std::string text = load_arg(arg);
    return parse_problem(text);
}

void print_value_row(const std::string& kind, const Problem& p, const std::string& detail, const Rat& v,
                     bool times, long ms) {
    std::cout << kind << "  " << p.serialize() << "  " << detail << (detail.empty() ? "" : "  ") << "= "
              << rat_pretty(v);
    if (times) std::cout << "  [" << ms << " ms]";
    std::cout << '\n';
}

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"distributed index coding capacity bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    CommonArgs common;
    bool times = false;
    app.add_flag("--times", times, "print wall-clock times");

    std::string config_arg, grouping_arg, family_arg, format = "text", out_path, mode_arg = "cor4",
                d_arg = "dstar", query_arg;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 4;
    int sample_every = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_problem = true) {
        if (needs_problem) cmd->add_option("-p,--problem", common.problem, "problem text or @file")->required();
        cmd->add_option("--weights", common.weights, "comma-separated receiver weights");
        cmd->add_option("--submod", common.submod, "full|elemental submodularity generation")
            ->check(CLI::IsMember({"full", "elemental"}));
        cmd->add_flag("--no-axiom6", common.no_axiom6, "drop the conditional-independence equalities");
        cmd->add_flag("--dump-lp", common.dump_lp, "print the generated LP");
        cmd->add_option("--cap-vars", common.cap_vars, "grouping cell cap (DIX_CAP_VARS overrides)");
    };

    CLI::App* inner_cmd = app.add_subcommand("inner", "composite coding inner bound");
    add_common(inner_cmd);
    inner_cmd->add_option("--config", config_arg, "decoding configuration file (@file or inline text)");

    CLI::App* outer_cmd = app.add_subcommand("outer", "grouping polymatroidal outer bound");
    add_common(outer_cmd);
    outer_cmd->add_option("--grouping", grouping_arg, "grouping spec or @file[#name]");
    outer_cmd->add_option("--family", family_arg, "all_server|individual_touch|fd2_all_pairs|touch_cross_fd2|fl");

    CLI::App* sumcap_cmd = app.add_subcommand("sumcap", "inner + outer ladder sum-capacity verdict");
    add_common(sumcap_cmd);

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "run the 218-problem catalog");
    catalog_cmd->add_option("--jobs,-j", jobs, "worker threads");
    catalog_cmd->add_option("--format", format, "text|csv|json")->check(CLI::IsMember({"text", "csv", "json"}));
    catalog_cmd->add_option("--out", out_path, "write report to a file");
    catalog_cmd->add_option("--sample", sample_every, "evaluate every k-th problem only");
    catalog_cmd->add_option("--submod", common.submod, "full|elemental (default elemental for speed)")
        ->check(CLI::IsMember({"full", "elemental"}));

    CLI::App* region_cmd = app.add_subcommand("region", "project a rate region onto R-space");
    add_common(region_cmd);
    region_cmd->add_option("--mode", mode_arg, "cor4|allserver")->check(CLI::IsMember({"cor4", "allserver"}));
    region_cmd->add_option("--d", d_arg, "decode sets: dstar|complement|@file");

    CLI::App* fdg_cmd = app.add_subcommand("fdg", "fd-separation query");
    add_common(fdg_cmd);
    fdg_cmd->add_option("--query", query_arg, "U=...|W=...|Z=... with tokens x3, y1,2 split by ';'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }

    try {
        if (inner_cmd->parsed()) {
            Problem p = problem_from_arg(common.problem);
            std::vector<Rat> w = parse_weights(p, common.weights);
            std::vector<DecodingConfig> cfgs =
                config_arg.empty() ? std::vector<DecodingConfig>{default_config(p)}
                                   : parse_config_text(p, load_arg(config_arg));
            auto t0 = std::chrono::steady_clock::now();
            LinearProgram lp = cfgs.size() == 1 ? fixed_lp(p, cfgs[0], w) : fractional_lp(p, cfgs, w);
            if (common.dump_lp) lp.dump(std::cout);
            LpResult r = lp_solve(lp);
            if (r.status != LpStatus::Optimal) throw std::logic_error("inner LP not optimal");
            print_value_row("inner", p, cfgs.size() == 1 ? "fixed" : "fractional(" + std::to_string(cfgs.size()) + ")",
                            r.value, times, ms_since(t0));
            return kOk;
        }
        if (outer_cmd->parsed()) {
            Problem p = problem_from_arg(common.problem);
            std::vector<Rat> w = parse_weights(p, common.weights);
            OuterOptions opts = outer_options(common);
            auto t0 = std::chrono::steady_clock::now();
            if (!family_arg.empty()) {
                if (family_arg == "fl") {
                    Rat v = fl_bound(p, w);
                    print_value_row("outer", p, "fl", v, times, ms_since(t0));
                    return kOk;
                }
                GroupingFamily fam;
                if (family_arg == "all_server")
                    fam = GroupingFamily::AllServer;
                else if (family_arg == "individual_touch")
                    fam = GroupingFamily::IndividualTouch;
                else if (family_arg == "fd2_all_pairs")
                    fam = GroupingFamily::Fd2AllPairs;
                else if (family_arg == "touch_cross_fd2")
                    fam = GroupingFamily::TouchCrossFd2;
                else
                    throw ParseError("unknown family " + family_arg);
                SearchResult s = search_upper(p, fam, w, opts);
                print_value_row("outer", p, std::string(family_name(fam)) + " via " + s.grouping.label, s.value, times,
                                ms_since(t0));
                for (const auto& skip : s.skipped) std::cout << "  skipped " << skip << '\n';
                return kOk;
            }
            std::string spec = grouping_arg.empty() ? "allserver" : grouping_arg;
            Grouping g = parse_grouping_arg(p, spec);
            LinearProgram lp = grouping_pm_lp(p, g, w, opts);
            if (common.dump_lp) lp.dump(std::cout);
            LpResult r = lp_solve(lp);
            if (r.status != LpStatus::Optimal) throw std::logic_error("outer LP not optimal");
            print_value_row("outer", p, g.label, r.value, times, ms_since(t0));
            return kOk;
        }
        if (sumcap_cmd->parsed()) {
            Problem p = problem_from_arg(common.problem);
            OuterOptions opts = outer_options(common);
            SumcapResult r = sumcap(p, opts);
            std::cout << "sumcap  " << p.serialize() << "  ";
            if (r.established)
                std::cout << "ESTABLISHED " << rat_pretty(r.inner) << "  via " << r.grouping;
            else
                std::cout << "UNRESOLVED [" << rat_pretty(r.inner) << ", " << rat_pretty(r.outer) << "]  best "
                          << r.grouping;
            std::cout << "  (" << r.outer_progress << ")";
            if (times) std::cout << "  [inner " << r.ms_inner << " ms, outer " << r.ms_outer << " ms]";
            std::cout << '\n';
            return kOk;
        }
        if (catalog_cmd->parsed()) {
            OuterOptions opts = outer_options(common, /*catalog_default=*/true);
            CatalogSummary s = run_catalog(jobs, opts, sample_every);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw ParseError("cannot write " + out_path);
                os = &file;
            }
            if (format == "csv") {
                write_catalog_csv(s, *os, times);
            } else if (format == "json") {
                write_catalog_json(s, *os, times);
            } else {
                for (const auto& r : s.rows) {
                    *os << r.problem_no << "  " << r.sequence << "  inner=" << rat_to_string(r.inner)
                        << " outer=" << rat_to_string(r.outer) << " expected=" << rat_to_string(r.expected) << "  "
                        << (r.established ? "ESTABLISHED" : "UNRESOLVED") << "  via " << r.grouping_used;
                    if (times) *os << "  [" << r.ms_inner << "+" << r.ms_outer << " ms]";
                    *os << '\n';
                }
            }
            std::cout << "inner matched " << s.inner_matched << "/" << s.rows.size() << ", outer matched "
                      << s.outer_matched << "/" << s.rows.size() << ", established " << s.established << "/"
                      << s.rows.size() << '\n';
            if (!s.unresolved.empty()) {
                std::cout << "unresolved:";
                for (int no : s.unresolved) std::cout << ' ' << no;
                std::cout << '\n';
            }
            return kOk;
        }
        if (region_cmd->parsed()) {
            Problem p = problem_from_arg(common.problem);
            if (p.n() > 4 && mode_arg == "allserver") throw CapExceeded("region projection capped at n <= 4");
            std::vector<MsgSet> d;
            if (d_arg == "dstar") {
                d = dstar(p);
            } else if (d_arg == "complement") {
                for (int i = 1; i <= p.n(); ++i) d.push_back(full_mask(p.n()) & ~p.a(i));
            } else {
                auto cfgs = parse_config_text(p, load_arg(d_arg));
                d = cfgs.at(0).decode_sets;
            }
            IneqSystem sys;
            if (mode_arg == "cor4") {
                sys = cor4_region(p, d);
                prune_redundant(sys);
            } else {
                RegionSystem rs = all_server_region(p);
                sys = fme_eliminate(std::move(rs.system), rs.eliminate_vars);
                prune_redundant(sys);
            }
            std::vector<std::string> lines;
            for (const auto& row : sys.rows) lines.push_back(sys.row_to_string(row));
            std::sort(lines.begin(), lines.end(), [](const std::string& a, const std::string& b) {
                return std::make_pair(a.size(), std::cref(a)) < std::make_pair(b.size(), std::cref(b));
            });
            for (const auto& line : lines) std::cout << line << '\n';
            return kOk;
        }
        if (fdg_cmd->parsed()) {
            Problem p = problem_from_arg(common.problem);
            Fdg g(p);
            SeparationQuery q = parse_fdg_query(g, query_arg);
            std::vector<int> a;
            a.insert(a.end(), q.u.begin(), q.u.end());
            a.insert(a.end(), q.w.begin(), q.w.end());
            a.insert(a.end(), q.z.begin(), q.z.end());
            InducedGraph sub = ancestral_graph(g, a);
            bool sep = fd_separates(g, q);
            std::cout << "fdg  " << p.serialize() << "  " << (sep ? "separated" : "not separated")
                      << "  (ancestral graph: " << sub.vertices.size() << " vertices, " << sub.edges.size()
                      << " edges)\n";
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kParseError;
}

}  // namespace dix::cli
