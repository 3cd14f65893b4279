#include "dix/inner.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <set>
#include <unordered_map>

namespace dix {

namespace {

// Family of all submasks of a, including the empty mask.
SubsetFamily lower_set(int n, MsgSet a) {
    SubsetFamily out(n);
    MsgSet s = a;
    while (true) {
        out.insert(s);
        if (s == 0) break;
        s = (s - 1) & a;
    }
    return out;
}

std::vector<MsgSet> sorted_servers(const ServerSet& s) { return s.to_vector(); }

// Emits the two decoding-constraint families for one configuration
// "block". Rate/composite/capacity variables are supplied by lookups so
// the same generator serves the fixed LP, the fractional LP and CCC.
struct BlockEmitter {
    const Problem& p;
    LinearProgram& lp;
    const std::vector<ServerSet>& groups;
    const std::vector<MsgSet>& decode_sets;
    const InnerOptions& opts;
    std::function<int(int)> rate_var;    // 1-based receiver -> var or -1 (rate pinned to 0)
    std::function<int(MsgSet)> s_var;    // composite index -> var
    std::function<int(MsgSet)> cap_var;  // server -> var; empty when capacities are constants

    void emit() {
        int n = p.n();
        for (int i = 1; i <= n; ++i) {
            // a receiver that cannot recover its own message sends nothing
            // (rate pinned to zero); its decoding imposes no conditions
            if (!msg_in(delta(p, {groups, decode_sets}, i), i)) continue;
            emit_second_step(i);
            std::size_t q_size = groups[static_cast<std::size_t>(i - 1)].count();
            SubsetFamily gamma = subset_completion(groups[static_cast<std::size_t>(i - 1)]);
            SubsetFamily ground_fam = set_minus(gamma, lower_set(n, p.a(i)));
            std::size_t m_size = ground_fam.count();
            bool use_q = opts.form == FirstStepForm::Q || (opts.form == FirstStepForm::Auto && q_size < m_size);
            if (use_q)
                emit_first_step_q(i);
            else
                emit_first_step_m(i, ground_fam);
        }
    }

    void emit_second_step(int i) {
        MsgSet di = delta(p, {groups, decode_sets}, i);
        MsgSet da = di | p.a(i);
        SubsetFamily gamma = subset_completion(groups[static_cast<std::size_t>(i - 1)]);
        // composite indices usable in the second step at receiver i
        std::vector<MsgSet> usable;
        MsgSet k = da;
        while (true) {
            if (k != 0 && gamma.contains(k)) usable.push_back(k);
            if (k == 0) break;
            k = (k - 1) & da;
        }
        std::sort(usable.begin(), usable.end());
        // kmask[j]: which usable composites contain message j
        std::vector<std::uint64_t> kmask(static_cast<std::size_t>(p.n()) + 1, 0);
        for (std::size_t u = 0; u < usable.size(); ++u)
            for (int j : msgset_to_list(usable[u])) kmask[static_cast<std::size_t>(j)] |= std::uint64_t{1} << u;
        for (MsgSet l = di; l != 0; l = (l - 1) & di) {
            std::uint64_t cov = 0;
            for (int j : msgset_to_list(l)) cov |= kmask[static_cast<std::size_t>(j)];
            if (opts.prune_dominated) {
                // dominated when some extra message adds no composite index
                bool dominated = false;
                for (int j : msgset_to_list(di & ~l))
                    if ((kmask[static_cast<std::size_t>(j)] & ~cov) == 0) {
                        dominated = true;
                        break;
                    }
                if (dominated) continue;
            }
            std::vector<LinTerm> terms;
            for (int j : msgset_to_list(l)) {
                int v = rate_var(j);
                if (v >= 0) terms.push_back(LinTerm{v, Rat(1)});
            }
            for (MsgSet kk : usable)
                if (kk & l) terms.push_back(LinTerm{s_var(kk), Rat(-1)});
            lp.add_le(std::move(terms), Rat(0));
        }
    }

    void emit_first_step_m(int i, const SubsetFamily& ground_fam) {
        std::vector<MsgSet> ground = ground_fam.to_vector();
        std::sort(ground.begin(), ground.end());
        std::vector<MsgSet> servers = sorted_servers(groups[static_cast<std::size_t>(i - 1)]);
        if (servers.size() > 64) throw CapExceeded("first-step generation needs <= 64 servers in P_i", i);
        if (ground.size() >= 63 || (std::size_t{1} << ground.size()) > opts.max_enumeration)
            throw CapExceeded("first-step constraint count exceeds the configured cap at receiver " + std::to_string(i), i);
        // cover[k]: which servers of P_i hold composite index ground[k]
        std::vector<std::uint64_t> cover(ground.size(), 0);
        for (std::size_t k = 0; k < ground.size(); ++k)
            for (std::size_t s = 0; s < servers.size(); ++s)
                if ((ground[k] & servers[s]) == ground[k]) cover[k] |= std::uint64_t{1} << s;
        std::size_t total = std::size_t{1} << ground.size();
        std::vector<std::uint64_t> cover_union(total, 0);
        std::unordered_map<std::uint64_t, Rat> cap_memo;
        for (std::size_t msub = 1; msub < total; ++msub) {
            std::size_t low = static_cast<std::size_t>(std::countr_zero(msub));
            cover_union[msub] = cover_union[msub & (msub - 1)] | cover[low];
            if (opts.prune_dominated) {
                // dominated when an absent composite index is already
                // covered: the enlarged collection has the same servers
                bool dominated = false;
                for (std::size_t t = 0; t < ground.size(); ++t)
                    if (!((msub >> t) & 1) && (cover[t] & ~cover_union[msub]) == 0) {
                        dominated = true;
                        break;
                    }
                if (dominated) continue;
            }
            std::vector<LinTerm> terms;
            for (std::size_t rest = msub; rest;) {
                std::size_t b = static_cast<std::size_t>(std::countr_zero(rest));
                rest &= rest - 1;
                terms.push_back(LinTerm{s_var(ground[b]), Rat(1)});
            }
            if (cap_var) {
                for (std::uint64_t rest = cover_union[msub]; rest;) {
                    int b = std::countr_zero(rest);
                    rest &= rest - 1;
                    terms.push_back(LinTerm{cap_var(servers[static_cast<std::size_t>(b)]), Rat(-1)});
                }
                lp.add_le(std::move(terms), Rat(0));
            } else {
                auto it = cap_memo.find(cover_union[msub]);
                if (it == cap_memo.end()) {
                    Rat sum = 0;
                    for (std::uint64_t rest = cover_union[msub]; rest;) {
                        int b = std::countr_zero(rest);
                        rest &= rest - 1;
                        sum += p.capacity(servers[static_cast<std::size_t>(b)]);
                    }
                    it = cap_memo.emplace(cover_union[msub], std::move(sum)).first;
                }
                lp.add_le(std::move(terms), it->second);
            }
        }
    }

    void emit_first_step_q(int i) {
        std::vector<MsgSet> servers = sorted_servers(groups[static_cast<std::size_t>(i - 1)]);
        if (servers.size() >= 63 || (std::size_t{1} << servers.size()) > opts.max_enumeration)
            throw CapExceeded("first-step constraint count exceeds the configured cap at receiver " + std::to_string(i), i);
        int n = p.n();
        SubsetFamily ai_lower = lower_set(n, p.a(i));
        std::vector<SubsetFamily> fam;  // subset completion per single server
        fam.reserve(servers.size());
        for (MsgSet j : servers) {
            ServerSet one(n);
            one.insert(j);
            fam.push_back(subset_completion(one));
        }
        std::vector<MsgSet> included;
        // DFS over include/exclude; at a leaf, "in" is Gamma_*(Q) and
        // "out" is Gamma_*(P_i \ Q).
        std::function<void(std::size_t, SubsetFamily, SubsetFamily, Rat)> rec =
            [&](std::size_t idx, SubsetFamily in, SubsetFamily out, Rat cap) {
                if (idx == servers.size()) {
                    if (included.empty()) return;
                    SubsetFamily lhs = set_minus(set_minus(in, out), ai_lower);
                    if (lhs.empty()) return;
                    std::vector<LinTerm> terms;
                    lhs.for_each([&](MsgSet kk) { terms.push_back(LinTerm{s_var(kk), Rat(1)}); });
                    if (cap_var) {
                        for (MsgSet j : included) terms.push_back(LinTerm{cap_var(j), Rat(-1)});
                        lp.add_le(std::move(terms), Rat(0));
                    } else {
                        lp.add_le(std::move(terms), cap);
                    }
                    return;
                }
                included.push_back(servers[idx]);
                rec(idx + 1, in | fam[idx], out, cap + p.capacity(servers[idx]));
                included.pop_back();
                rec(idx + 1, in, out | fam[idx], cap);
            };
        rec(0, SubsetFamily(n), SubsetFamily(n), Rat(0));
    }
};

struct FixedVars {
    std::vector<int> rate;                      // per receiver
    std::unordered_map<MsgSet, int> composite;  // per K
};

FixedVars make_fixed_vars(const Problem& p, const std::vector<ServerSet>& groups, LinearProgram& lp) {
    FixedVars v;
    for (int i = 1; i <= p.n(); ++i) v.rate.push_back(lp.add_var("R" + std::to_string(i)));
    SubsetFamily pool(p.n());
    for (const auto& g : groups) pool |= subset_completion(g);
    pool.erase(0);
    for (MsgSet k : pool.to_vector()) v.composite[k] = lp.add_var("S" + msgset_to_string(k));
    return v;
}

LinearProgram build_fixed(const Problem& p, const DecodingConfig& cfg, const std::vector<Rat>& weights,
                          const InnerOptions& opts) {
    validate_config(p, cfg);
    if (weights.size() != static_cast<std::size_t>(p.n())) throw std::invalid_argument("weight count != n");
    LinearProgram lp;
    FixedVars vars = make_fixed_vars(p, cfg.server_groups, lp);
    BlockEmitter em{p,
                    lp,
                    cfg.server_groups,
                    cfg.decode_sets,
                    opts,
                    [&](int j) { return vars.rate[static_cast<std::size_t>(j - 1)]; },
                    [&](MsgSet k) { return vars.composite.at(k); },
                    nullptr};
    for (int i = 1; i <= p.n(); ++i)
        if (!msg_in(delta(p, cfg, i), i))
            lp.add_eq({LinTerm{vars.rate[static_cast<std::size_t>(i - 1)], Rat(1)}}, Rat(0));
    em.emit();
    std::vector<LinTerm> obj;
    for (int i = 1; i <= p.n(); ++i)
        if (sgn(weights[static_cast<std::size_t>(i - 1)]) != 0)
            obj.push_back(LinTerm{vars.rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    return lp;
}

}  // namespace

void validate_config(const Problem& p, const DecodingConfig& cfg) {
    std::size_t n = static_cast<std::size_t>(p.n());
    if (cfg.server_groups.size() != n || cfg.decode_sets.size() != n)
        throw std::invalid_argument("decoding configuration size != n");
    for (int i = 1; i <= p.n(); ++i) {
        MsgSet d = cfg.decode_sets[static_cast<std::size_t>(i - 1)];
        if (!msg_in(d, i)) throw std::invalid_argument("D_i must contain i");
        if (d & p.a(i)) throw std::invalid_argument("D_i must avoid A_i");
        if (d & ~full_mask(p.n())) throw std::invalid_argument("D_i out of range");
        const ServerSet& g = cfg.server_groups[static_cast<std::size_t>(i - 1)];
        if (g.universe() != p.n()) throw std::invalid_argument("P_i universe mismatch");
        if (g.empty()) throw std::invalid_argument("P_i must be nonempty");
        if (g.contains(0)) throw std::invalid_argument("P_i contains the empty server");
    }
}

MsgSet delta(const Problem&, const DecodingConfig& cfg, int i) {
    MsgSet avail = 0;
    cfg.server_groups[static_cast<std::size_t>(i - 1)].for_each([&](MsgSet j) { avail |= j; });
    return avail & cfg.decode_sets[static_cast<std::size_t>(i - 1)];
}

LinearProgram fixed_lp(const Problem& p, const DecodingConfig& cfg, const std::vector<Rat>& weights,
                       const InnerOptions& opts) {
    return build_fixed(p, cfg, weights, opts);
}

LinearProgram fixed_lp_q_form(const Problem& p, const DecodingConfig& cfg, const std::vector<Rat>& weights,
                              const InnerOptions& opts) {
    InnerOptions o = opts;
    o.form = FirstStepForm::Q;
    return build_fixed(p, cfg, weights, o);
}

IneqSystem cor4_region(const Problem& p, const std::vector<MsgSet>& decode_sets) {
    int n = p.n();
    if (decode_sets.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("decode set count != n");
    for (int i = 1; i <= n; ++i) {
        if (!msg_in(decode_sets[static_cast<std::size_t>(i - 1)], i)) throw std::invalid_argument("D_i must contain i");
        if (decode_sets[static_cast<std::size_t>(i - 1)] & p.a(i)) throw std::invalid_argument("D_i must avoid A_i");
    }
    // cap_below[m]: total capacity of nonempty servers inside m
    std::vector<Rat> cap_below(std::size_t{1} << n, Rat(0));
    for (MsgSet m = 1; m <= full_mask(n); ++m) {
        MsgSet low = m & (MsgSet(0) - m);
        cap_below[m] = cap_below[m & (m - 1)];
        MsgSet rest = m & ~low;
        // servers containing low, inside m
        MsgSet s = rest;
        while (true) {
            cap_below[m] += p.capacity(low | s);
            if (s == 0) break;
            s = (s - 1) & rest;
        }
    }
    IneqSystem sys;
    for (int i = 1; i <= n; ++i) sys.add_var("R" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        MsgSet d = decode_sets[static_cast<std::size_t>(i - 1)];
        MsgSet da = d | p.a(i);
        for (MsgSet l = d; l != 0; l = (l - 1) & d) {
            std::vector<LinTerm> terms;
            for (int j : msgset_to_list(l)) terms.push_back(LinTerm{j - 1, Rat(1)});
            sys.add_le(std::move(terms), cap_below[da] - cap_below[da & ~l]);
        }
    }
    // drop duplicate rows (same L reachable from several receivers)
    std::vector<Constraint> uniq;
    std::set<std::string> keys;
    for (auto& row : sys.rows) {
        std::string key = sys.row_to_string(row);
        if (keys.insert(key).second) uniq.push_back(std::move(row));
    }
    sys.rows = std::move(uniq);
    return sys;
}

namespace {

std::vector<MsgSet> dstar_impl(const Problem& p, bool reversed) {
    int n = p.n();
    std::vector<MsgSet> d(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) d[static_cast<std::size_t>(i - 1)] = msg_bit(i);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                int i = reversed ? n - a : a + 1;
                int j = reversed ? n - b : b + 1;
                if (i == j) continue;
                MsgSet cover = p.a(i) | d[static_cast<std::size_t>(i - 1)];
                if ((p.a(j) & ~cover) != 0) continue;
                MsgSet next = (d[static_cast<std::size_t>(i - 1)] | d[static_cast<std::size_t>(j - 1)]) & ~p.a(i);
                if (next != d[static_cast<std::size_t>(i - 1)]) {
                    d[static_cast<std::size_t>(i - 1)] = next;
                    changed = true;
                }
            }
        }
    }
    return d;
}

}  // namespace

std::vector<MsgSet> dstar(const Problem& p) { return dstar_impl(p, false); }
std::vector<MsgSet> dstar_reversed_scan(const Problem& p) { return dstar_impl(p, true); }

DecodingConfig default_config(const Problem& p) {
    DecodingConfig cfg;
    ServerSet act = p.active_servers();
    cfg.server_groups.assign(static_cast<std::size_t>(p.n()), act);
    cfg.decode_sets = dstar(p);
    return cfg;
}

LinearProgram fractional_lp(const Problem& p, const std::vector<DecodingConfig>& configs,
                            const std::vector<Rat>& weights, const InnerOptions& opts) {
    if (configs.empty()) throw std::invalid_argument("fractional_lp needs at least one configuration");
    if (weights.size() != static_cast<std::size_t>(p.n())) throw std::invalid_argument("weight count != n");
    int n = p.n();
    LinearProgram lp;
    std::vector<int> rate(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i));

    ServerSet act = p.active_servers();
    struct ConfigVars {
        std::vector<int> rate;  // -1 when pinned to zero
        std::unordered_map<MsgSet, int> composite;
        std::unordered_map<MsgSet, int> cap;
    };
    std::vector<ConfigVars> cv(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        validate_config(p, configs[c]);
        std::string tag = "#" + std::to_string(c + 1);
        cv[c].rate.assign(static_cast<std::size_t>(n), -1);
        for (int i = 1; i <= n; ++i)
            if (msg_in(delta(p, configs[c], i), i))
                cv[c].rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i) + tag);
        SubsetFamily pool(n);
        ServerSet used(n);
        for (const auto& g : configs[c].server_groups) {
            pool |= subset_completion(g);
            used |= g;
        }
        pool.erase(0);
        for (MsgSet k : pool.to_vector()) cv[c].composite[k] = lp.add_var("S" + msgset_to_string(k) + tag);
        used &= act;
        for (MsgSet j : used.to_vector()) cv[c].cap[j] = lp.add_var("C" + msgset_to_string(j) + tag);
        if (lp.num_vars() > static_cast<int>(opts.max_vars)) throw CapExceeded("fractional_lp variable cap exceeded");
    }
    for (std::size_t c = 0; c < configs.size(); ++c) {
        BlockEmitter em{p,
                        lp,
                        configs[c].server_groups,
                        configs[c].decode_sets,
                        opts,
                        [&](int j) { return cv[c].rate[static_cast<std::size_t>(j - 1)]; },
                        [&](MsgSet k) { return cv[c].composite.at(k); },
                        [&](MsgSet j) { return cv[c].cap.at(j); }};
        em.emit();
    }
    // rate linking and capacity splits
    for (int i = 1; i <= n; ++i) {
        std::vector<LinTerm> terms{LinTerm{rate[static_cast<std::size_t>(i - 1)], Rat(1)}};
        for (std::size_t c = 0; c < configs.size(); ++c)
            if (cv[c].rate[static_cast<std::size_t>(i - 1)] >= 0)
                terms.push_back(LinTerm{cv[c].rate[static_cast<std::size_t>(i - 1)], Rat(-1)});
        lp.add_eq(std::move(terms), Rat(0));
    }
    act.for_each([&](MsgSet j) {
        std::vector<LinTerm> terms;
        for (std::size_t c = 0; c < configs.size(); ++c) {
            auto it = cv[c].cap.find(j);
            if (it != cv[c].cap.end()) terms.push_back(LinTerm{it->second, Rat(1)});
        }
        if (!terms.empty()) lp.add_le(std::move(terms), p.capacity(j));
    });
    std::vector<LinTerm> obj;
    for (int i = 1; i <= n; ++i)
        if (sgn(weights[static_cast<std::size_t>(i - 1)]) != 0)
            obj.push_back(LinTerm{rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    return lp;
}

Rat ccc_sum_rate(const Problem& p, const std::vector<MsgSet>& decode_sets,
                 std::vector<ServerSet> server_group_family, const InnerOptions& opts) {
    if (server_group_family.empty()) {
        ServerSet act = p.active_servers();
        std::vector<MsgSet> servers = act.to_vector();
        if (servers.size() > 20) throw CapExceeded("default CCC family needs <= 20 active servers");
        std::size_t total = std::size_t{1} << servers.size();
        for (std::size_t mask = 1; mask < total; ++mask) {
            ServerSet g(p.n());
            for (std::size_t rest = mask; rest;) {
                int b = std::countr_zero(rest);
                rest &= rest - 1;
                g.insert(servers[static_cast<std::size_t>(b)]);
            }
            server_group_family.push_back(std::move(g));
        }
    }
    std::vector<DecodingConfig> configs;
    configs.reserve(server_group_family.size());
    for (const auto& g : server_group_family) {
        DecodingConfig cfg;
        cfg.server_groups.assign(static_cast<std::size_t>(p.n()), g);
        cfg.decode_sets = decode_sets;
        configs.push_back(std::move(cfg));
    }
    LinearProgram lp = fractional_lp(p, configs, unit_weights(p.n()), opts);
    LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimal) throw std::logic_error("ccc_sum_rate: LP not optimal");
    return r.value;
}

std::vector<std::vector<MsgSet>> all_decode_tuples(const Problem& p, std::size_t cap) {
    int n = p.n();
    std::vector<std::vector<MsgSet>> per(static_cast<std::size_t>(n));
    std::size_t total = 1;
    for (int i = 1; i <= n; ++i) {
        MsgSet rest = full_mask(n) & ~p.a(i) & ~msg_bit(i);
        MsgSet s = rest;
        std::vector<MsgSet> opts_i;
        while (true) {
            opts_i.push_back(msg_bit(i) | s);
            if (s == 0) break;
            s = (s - 1) & rest;
        }
        std::sort(opts_i.begin(), opts_i.end());
        total *= opts_i.size();
        if (total > cap) throw CapExceeded("decode tuple enumeration exceeds cap");
        per[static_cast<std::size_t>(i - 1)] = std::move(opts_i);
    }
    std::vector<std::vector<MsgSet>> out;
    out.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<MsgSet> tuple(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) tuple[static_cast<std::size_t>(i)] = per[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        out.push_back(std::move(tuple));
        int pos = n - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < per[static_cast<std::size_t>(pos)].size()) break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

std::vector<Rat> unit_weights(int n) { return std::vector<Rat>(static_cast<std::size_t>(n), Rat(1)); }

}  // namespace dix
