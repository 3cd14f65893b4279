#include "dix/outer.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace dix {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

std::string group_mask_to_string(std::uint32_t g) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if ((g >> i) & 1) {
            if (!first) os << ',';
            first = false;
            os << (i + 1);
        }
    os << '}';
    return os.str();
}

}  // namespace

Grouping make_grouping(std::vector<ServerSet> groups, ServerSet ground, std::string label) {
    if (groups.empty()) throw std::invalid_argument("grouping needs at least one group");
    ServerSet u(ground.universe());
    for (const auto& g : groups) {
        if (g.universe() != ground.universe()) throw std::invalid_argument("grouping universe mismatch");
        if (g.contains(0)) throw std::invalid_argument("group contains the empty server");
        u |= g;
    }
    if (!(u == ground)) throw std::invalid_argument("invalid grouping: groups do not cover the ground set");
    return Grouping{std::move(groups), std::move(ground), std::move(label)};
}

ServerSet pg(const Grouping& g, std::uint32_t group_mask) {
    ServerSet out(g.ground.universe());
    for (std::size_t i = 0; i < g.groups.size(); ++i)
        if ((group_mask >> i) & 1) out |= g.groups[i];
    return out;
}

LinearProgram grouping_pm_lp(const Problem& p, const Grouping& g, const std::vector<Rat>& weights,
                             const OuterOptions& opts) {
    int n = p.n();
    int m = static_cast<int>(g.groups.size());
    if (weights.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("weight count != n");
    if (g.ground.universe() != n) throw std::invalid_argument("grouping universe != n");
    std::size_t gcount = std::size_t{1} << m, kcount = std::size_t{1} << n;
    if (gcount * kcount > opts.cap_cells)
        throw CapExceeded("grouping cell count " + std::to_string(gcount * kcount) + " exceeds cap " +
                          std::to_string(opts.cap_cells));

    std::vector<ServerSet> pgs(gcount, ServerSet(n));
    for (std::size_t gm = 1; gm < gcount; ++gm) {
        std::size_t low = std::size_t{1} << std::countr_zero(gm);
        pgs[gm] = pgs[gm & (gm - 1)] | g.groups[static_cast<std::size_t>(std::countr_zero(gm))];
        (void)low;
    }
    std::vector<ServerSet> tks(kcount, ServerSet(n));
    for (MsgSet k = 1; k < kcount; ++k) tks[k] = touch(n, k);

    auto cell = [&](std::size_t gm, MsgSet k) { return static_cast<int>(gm * kcount + k); };

    // encoding equalities: cells with identical conditional entropy merge
    Dsu dsu(gcount * kcount);
    for (MsgSet k = 1; k < kcount; ++k) {
        for (std::size_t g1 = 1; g1 < gcount; ++g1) {
            for (std::size_t g2 = g1 + 1; g2 < gcount; ++g2) {
                if (pgs[g1] == pgs[g2] ||
                    !SubsetFamily::symdiff_intersects(pgs[g1], pgs[g2], tks[k]))
                    dsu.unite(cell(g1, k), cell(g2, k));
            }
        }
    }

    LinearProgram lp;
    std::vector<int> rate(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i));
    std::vector<int> var_of(gcount * kcount, -1);
    for (std::size_t gm = 1; gm < gcount; ++gm)
        for (MsgSet k = 1; k < kcount; ++k) {
            int root = dsu.find(cell(gm, k));
            if (var_of[static_cast<std::size_t>(root)] < 0) {
                std::size_t rg = static_cast<std::size_t>(root) / kcount;
                MsgSet rk = static_cast<MsgSet>(static_cast<std::size_t>(root) % kcount);
                var_of[static_cast<std::size_t>(root)] =
                    lp.add_var("f" + group_mask_to_string(static_cast<std::uint32_t>(rg)) + msgset_to_string(rk));
            }
        }
    auto fvar = [&](std::size_t gm, MsgSet k) -> int {
        if (gm == 0 || k == 0) return -1;  // constant zero
        return var_of[static_cast<std::size_t>(dsu.find(cell(gm, k)))];
    };

    // capacity bounds: tightest over each merge class
    {
        std::vector<std::optional<Rat>> best(lp.num_vars());
        for (std::size_t gm = 1; gm < gcount; ++gm)
            for (MsgSet k = 1; k < kcount; ++k) {
                Rat rhs = p.cap_sum(pgs[gm] & tks[k]);
                int v = fvar(gm, k);
                auto& slot = best[static_cast<std::size_t>(v)];
                if (!slot || rhs < *slot) slot = std::move(rhs);
            }
        for (int v = 0; v < lp.num_vars(); ++v)
            if (best[static_cast<std::size_t>(v)]) lp.add_le({LinTerm{v, Rat(1)}}, *best[static_cast<std::size_t>(v)]);
    }

    // monotonicity on single-element covers
    for (std::size_t gm = 1; gm < gcount; ++gm)
        for (MsgSet k = 1; k < kcount; ++k) {
            int a = fvar(gm, k);
            for (int gi = 0; gi < m; ++gi) {
                if ((gm >> gi) & 1) continue;
                int b = fvar(gm | (std::size_t{1} << gi), k);
                if (a != b) lp.add_le({LinTerm{a, Rat(1)}, LinTerm{b, Rat(-1)}}, Rat(0));
            }
            for (int ki = 0; ki < n; ++ki) {
                if ((k >> ki) & 1) continue;
                int b = fvar(gm, k | msg_bit(ki + 1));
                if (a != b) lp.add_le({LinTerm{a, Rat(1)}, LinTerm{b, Rat(-1)}}, Rat(0));
            }
        }

    // submodularity: f is submodular in (G, complement of K), so unions
    // of G pair with intersections of K
    auto add_submod = [&](std::size_t g1, MsgSet k1, std::size_t g2, MsgSet k2) {
        std::vector<LinTerm> terms;
        auto push = [&](std::size_t gm, MsgSet k, int sign) {
            int v = fvar(gm, k);
            if (v >= 0) terms.push_back(LinTerm{v, Rat(sign)});
        };
        push(g1 | g2, k1 & k2, +1);
        push(g1 & g2, k1 | k2, +1);
        push(g1, k1, -1);
        push(g2, k2, -1);
        lp.add_le(std::move(terms), Rat(0));
    };
    if (opts.submod == SubmodMode::Full) {
        std::size_t cells = (gcount - 1) * (kcount - 1);
        if (cells * cells / 2 > opts.cap_pairs)
            throw CapExceeded("full submodularity pair count exceeds cap; use elemental mode");
        for (std::size_t g1 = 1; g1 < gcount; ++g1)
            for (MsgSet k1 = 1; k1 < kcount; ++k1)
                for (std::size_t g2 = g1; g2 < gcount; ++g2)
                    for (MsgSet k2 = (g2 == g1 ? k1 + 1 : MsgSet(1)); k2 < kcount; ++k2) {
                        bool le = (g1 & ~g2) == 0 && (k2 & ~k1) == 0;  // (G1,K1) below (G2,K2) in (G, ~K)
                        bool ge = (g2 & ~g1) == 0 && (k1 & ~k2) == 0;
                        if (le || ge) continue;  // comparable pairs are trivial
                        add_submod(g1, k1, g2, k2);
                    }
    } else {
        // local diamonds on the (G, ~K) product lattice imply the full
        // family; directions add a group or drop a message
        int dims = m + n;
        for (std::size_t gm = 0; gm < gcount; ++gm)
            for (MsgSet k = 0; k < kcount; ++k)
                for (int d1 = 0; d1 < dims; ++d1) {
                    bool d1_group = d1 < m;
                    if (d1_group ? ((gm >> d1) & 1) : !((k >> (d1 - m)) & 1)) continue;
                    std::size_t g_a = gm | (d1_group ? std::size_t{1} << d1 : 0);
                    MsgSet k_a = d1_group ? k : k & ~msg_bit(d1 - m + 1);
                    for (int d2 = d1 + 1; d2 < dims; ++d2) {
                        bool d2_group = d2 < m;
                        if (d2_group ? ((gm >> d2) & 1) : !((k >> (d2 - m)) & 1)) continue;
                        std::size_t g_b = gm | (d2_group ? std::size_t{1} << d2 : 0);
                        MsgSet k_b = d2_group ? k : k & ~msg_bit(d2 - m + 1);
                        add_submod(g_a, k_a, g_b, k_b);
                    }
                }
    }

    // conditional independence across non-touching message sets
    if (opts.axiom6) {
        for (std::size_t gm = 1; gm < gcount; ++gm) {
            for (MsgSet k = 1; k < kcount; ++k) {
                MsgSet rest = static_cast<MsgSet>((kcount - 1)) & ~k;
                for (MsgSet kp = rest; kp != 0; kp = (kp - 1) & rest) {
                    if (kp < k) continue;  // unordered
                    if (SubsetFamily::and_intersects(tks[k], tks[kp], pgs[gm])) continue;
                    std::vector<LinTerm> terms;
                    int va = fvar(gm, k), vb = fvar(gm, kp), vc = fvar(gm, k | kp);
                    terms.push_back(LinTerm{va, Rat(1)});
                    terms.push_back(LinTerm{vb, Rat(1)});
                    terms.push_back(LinTerm{vc, Rat(-1)});
                    lp.add_eq(std::move(terms), Rat(0));
                }
            }
        }
    }

    // rate constraints
    std::size_t all_groups = gcount - 1;
    for (int i = 1; i <= n; ++i) {
        std::vector<LinTerm> terms{LinTerm{rate[static_cast<std::size_t>(i - 1)], Rat(1)}};
        MsgSet bi = p.b(i);
        int va = fvar(all_groups, bi | msg_bit(i));
        terms.push_back(LinTerm{va, Rat(-1)});
        if (bi != 0) {
            int vb = fvar(all_groups, bi);
            terms.push_back(LinTerm{vb, Rat(1)});
        }
        lp.add_le(std::move(terms), Rat(0));
    }

    std::vector<LinTerm> obj;
    for (int i = 1; i <= n; ++i)
        if (sgn(weights[static_cast<std::size_t>(i - 1)]) != 0)
            obj.push_back(LinTerm{rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    return lp;
}

Rat grouping_pm_bound(const Problem& p, const Grouping& g, const std::vector<Rat>& weights,
                      const OuterOptions& opts) {
    LpResult r = lp_solve(grouping_pm_lp(p, g, weights, opts));
    if (r.status != LpStatus::Optimal) throw std::logic_error("grouping PM LP not optimal");
    return r.value;
}

LinearProgram touch_specialized_lp(const Problem& p, const std::vector<Rat>& weights, SubmodMode submod) {
    int n = p.n();
    std::size_t kcount = std::size_t{1} << n;
    LinearProgram lp;
    std::vector<int> rate(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i));
    // f(G,K) collapses onto f(K,K) whenever K is inside G
    auto rep = [&](MsgSet gm, MsgSet k) -> std::pair<MsgSet, MsgSet> {
        if ((k & ~gm) == 0) return {k, k};
        return {gm, k};
    };
    std::vector<int> var_of(kcount * kcount, -1);
    auto fvar = [&](MsgSet gm, MsgSet k) -> int {
        if (gm == 0 || k == 0) return -1;
        auto [rg, rk] = rep(gm, k);
        std::size_t idx = static_cast<std::size_t>(rg) * kcount + rk;
        if (var_of[idx] < 0) var_of[idx] = lp.add_var("f" + msgset_to_string(rg) + msgset_to_string(rk));
        return var_of[idx];
    };
    // instantiate in deterministic order
    for (MsgSet gm = 1; gm < kcount; ++gm)
        for (MsgSet k = 1; k < kcount; ++k) fvar(gm, k);

    std::vector<std::optional<Rat>> best(static_cast<std::size_t>(lp.num_vars()));
    for (MsgSet gm = 1; gm < kcount; ++gm)
        for (MsgSet k = 1; k < kcount; ++k) {
            Rat rhs = p.cap_sum(touch_both(n, gm, k));
            int v = fvar(gm, k);
            auto& slot = best[static_cast<std::size_t>(v)];
            if (!slot || rhs < *slot) slot = std::move(rhs);
        }
    for (int v = 0; v < lp.num_vars(); ++v)
        if (best[static_cast<std::size_t>(v)]) lp.add_le({LinTerm{v, Rat(1)}}, *best[static_cast<std::size_t>(v)]);

    for (MsgSet gm = 1; gm < kcount; ++gm)
        for (MsgSet k = 1; k < kcount; ++k) {
            int a = fvar(gm, k);
            for (int d = 1; d <= n; ++d) {
                if (!msg_in(gm, d)) {
                    int b = fvar(gm | msg_bit(d), k);
                    if (a != b) lp.add_le({LinTerm{a, Rat(1)}, LinTerm{b, Rat(-1)}}, Rat(0));
                }
                if (!msg_in(k, d)) {
                    int b = fvar(gm, k | msg_bit(d));
                    if (a != b) lp.add_le({LinTerm{a, Rat(1)}, LinTerm{b, Rat(-1)}}, Rat(0));
                }
            }
        }

    auto add_submod = [&](MsgSet g1, MsgSet k1, MsgSet g2, MsgSet k2) {
        std::vector<LinTerm> terms;
        auto push = [&](MsgSet gm, MsgSet k, int sign) {
            int v = fvar(gm, k);
            if (v >= 0) terms.push_back(LinTerm{v, Rat(sign)});
        };
        push(g1 | g2, k1 & k2, +1);
        push(g1 & g2, k1 | k2, +1);
        push(g1, k1, -1);
        push(g2, k2, -1);
        lp.add_le(std::move(terms), Rat(0));
    };
    if (submod == SubmodMode::Full) {
        for (MsgSet g1 = 1; g1 < kcount; ++g1)
            for (MsgSet k1 = 1; k1 < kcount; ++k1)
                for (MsgSet g2 = g1; g2 < kcount; ++g2)
                    for (MsgSet k2 = (g2 == g1 ? k1 + 1 : MsgSet(1)); k2 < kcount; ++k2) {
                        bool le = (g1 & ~g2) == 0 && (k2 & ~k1) == 0;
                        bool ge = (g2 & ~g1) == 0 && (k1 & ~k2) == 0;
                        if (le || ge) continue;
                        add_submod(g1, k1, g2, k2);
                    }
    } else {
        for (MsgSet gm = 0; gm < kcount; ++gm)
            for (MsgSet k = 0; k < kcount; ++k)
                for (int d1 = 0; d1 < 2 * n; ++d1) {
                    bool g1d = d1 < n;
                    if (g1d ? msg_in(gm, d1 + 1) : !msg_in(k, d1 - n + 1)) continue;
                    MsgSet ga = gm | (g1d ? msg_bit(d1 + 1) : 0), ka = g1d ? k : k & ~msg_bit(d1 - n + 1);
                    for (int d2 = d1 + 1; d2 < 2 * n; ++d2) {
                        bool g2d = d2 < n;
                        if (g2d ? msg_in(gm, d2 + 1) : !msg_in(k, d2 - n + 1)) continue;
                        MsgSet gb = gm | (g2d ? msg_bit(d2 + 1) : 0), kb = g2d ? k : k & ~msg_bit(d2 - n + 1);
                        add_submod(ga, ka, gb, kb);
                    }
                }
    }

    MsgSet full = full_mask(n);
    for (int i = 1; i <= n; ++i) {
        std::vector<LinTerm> terms{LinTerm{rate[static_cast<std::size_t>(i - 1)], Rat(1)}};
        MsgSet bi = p.b(i);
        terms.push_back(LinTerm{fvar(full, bi | msg_bit(i)), Rat(-1)});
        if (bi != 0) terms.push_back(LinTerm{fvar(full, bi), Rat(1)});
        lp.add_le(std::move(terms), Rat(0));
    }
    std::vector<LinTerm> obj;
    for (int i = 1; i <= n; ++i)
        obj.push_back(LinTerm{rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    return lp;
}

LinearProgram all_server_lp(const Problem& p, const std::vector<Rat>& weights) {
    int n = p.n();
    if (n > 12) throw CapExceeded("all-server LP capped at n <= 12");
    std::size_t kcount = std::size_t{1} << n;
    LinearProgram lp;
    std::vector<int> rate(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i));
    std::vector<int> gv(kcount, -1);
    for (MsgSet k = 1; k < kcount; ++k) gv[k] = lp.add_var("g" + msgset_to_string(k));
    for (MsgSet k = 1; k < kcount; ++k) lp.add_le({LinTerm{gv[k], Rat(1)}}, p.cap_sum(touch(n, k)));
    for (MsgSet k = 1; k < kcount; ++k)
        for (int d = 1; d <= n; ++d)
            if (!msg_in(k, d)) lp.add_le({LinTerm{gv[k], Rat(1)}, LinTerm{gv[k | msg_bit(d)], Rat(-1)}}, Rat(0));
    for (MsgSet k1 = 1; k1 < kcount; ++k1)
        for (MsgSet k2 = k1 + 1; k2 < kcount; ++k2) {
            if ((k1 & ~k2) == 0 || (k2 & ~k1) == 0) continue;
            std::vector<LinTerm> terms{LinTerm{gv[k1 | k2], Rat(1)}, LinTerm{gv[k1], Rat(-1)}, LinTerm{gv[k2], Rat(-1)}};
            if ((k1 & k2) != 0) terms.push_back(LinTerm{gv[k1 & k2], Rat(1)});
            lp.add_le(std::move(terms), Rat(0));
        }
    for (int i = 1; i <= n; ++i) {
        MsgSet bi = p.b(i);
        std::vector<LinTerm> terms{LinTerm{rate[static_cast<std::size_t>(i - 1)], Rat(1)},
                                   LinTerm{gv[bi | msg_bit(i)], Rat(-1)}};
        if (bi != 0) terms.push_back(LinTerm{gv[bi], Rat(1)});
        lp.add_le(std::move(terms), Rat(0));
    }
    std::vector<LinTerm> obj;
    for (int i = 1; i <= n; ++i)
        obj.push_back(LinTerm{rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    return lp;
}

Rat all_server_bound(const Problem& p, const std::vector<Rat>& weights) {
    LpResult r = lp_solve(all_server_lp(p, weights));
    if (r.status != LpStatus::Optimal) throw std::logic_error("all-server LP not optimal");
    return r.value;
}

Rat fl_bound(const Problem& p, const std::vector<Rat>& weights) {
    int n = p.n();
    if (n > 10) throw CapExceeded("f_L bound capped at n <= 10");
    LinearProgram lp;
    std::vector<int> rate(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rate[static_cast<std::size_t>(i - 1)] = lp.add_var("R" + std::to_string(i));
    MsgSet full = full_mask(n);
    for (MsgSet l = 1; l <= full; ++l) {
        std::vector<int> fv(std::size_t{1} << n, -1);
        std::string tag = "_" + msgset_to_string(l);
        for (MsgSet k = l;; k = (k - 1) & l) {
            if (k != 0) fv[k] = lp.add_var("f" + tag + msgset_to_string(k));
            if (k == 0) break;
        }
        lp.add_le({LinTerm{fv[l], Rat(1)}}, p.cap_sum(touch(n, l)));
        for (MsgSet k = l; k != 0; k = (k - 1) & l)
            for (int d : msgset_to_list(l & ~k))
                lp.add_le({LinTerm{fv[k], Rat(1)}, LinTerm{fv[k | msg_bit(d)], Rat(-1)}}, Rat(0));
        std::vector<MsgSet> subs;
        for (MsgSet k = l; k != 0; k = (k - 1) & l) subs.push_back(k);
        std::sort(subs.begin(), subs.end());
        for (std::size_t a = 0; a < subs.size(); ++a)
            for (std::size_t b = a + 1; b < subs.size(); ++b) {
                MsgSet k1 = subs[a], k2 = subs[b];
                if ((k1 & ~k2) == 0 || (k2 & ~k1) == 0) continue;
                std::vector<LinTerm> terms{LinTerm{fv[k1 | k2], Rat(1)}, LinTerm{fv[k1], Rat(-1)},
                                           LinTerm{fv[k2], Rat(-1)}};
                if ((k1 & k2) != 0) terms.push_back(LinTerm{fv[k1 & k2], Rat(1)});
                lp.add_le(std::move(terms), Rat(0));
            }
        for (int i = 1; i <= n; ++i) {
            if (!msg_in(l, i)) continue;
            MsgSet bi = p.b(i);
            std::vector<LinTerm> terms{LinTerm{rate[static_cast<std::size_t>(i - 1)], Rat(1)},
                                       LinTerm{fv[(bi | msg_bit(i)) & l], Rat(-1)}};
            if ((bi & l) != 0) terms.push_back(LinTerm{fv[bi & l], Rat(1)});
            lp.add_le(std::move(terms), Rat(0));
        }
    }
    std::vector<LinTerm> obj;
    for (int i = 1; i <= n; ++i)
        obj.push_back(LinTerm{rate[static_cast<std::size_t>(i - 1)], weights[static_cast<std::size_t>(i - 1)]});
    lp.set_objective(Sense::Maximize, std::move(obj));
    LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimal) throw std::logic_error("f_L LP not optimal");
    return r.value;
}

RegionSystem all_server_region(const Problem& p) {
    int n = p.n();
    RegionSystem out;
    IneqSystem& sys = out.system;
    for (int i = 1; i <= n; ++i) sys.add_var("R" + std::to_string(i));
    std::size_t kcount = std::size_t{1} << n;
    std::vector<int> gv(kcount, -1);
    for (MsgSet k = 1; k < kcount; ++k) {
        gv[k] = sys.add_var("g" + msgset_to_string(k));
        out.eliminate_vars.push_back(gv[k]);
    }
    for (MsgSet k = 1; k < kcount; ++k) sys.add_le({LinTerm{gv[k], Rat(1)}}, p.cap_sum(touch(n, k)));
    for (MsgSet k = 1; k < kcount; ++k) {
        if (popcount(k) == 1) sys.add_le({LinTerm{gv[k], Rat(-1)}}, Rat(0));  // 0 = g(empty) <= g({k})
        for (int d = 1; d <= n; ++d)
            if (!msg_in(k, d)) sys.add_le({LinTerm{gv[k], Rat(1)}, LinTerm{gv[k | msg_bit(d)], Rat(-1)}}, Rat(0));
    }
    for (MsgSet k1 = 1; k1 < kcount; ++k1)
        for (MsgSet k2 = k1 + 1; k2 < kcount; ++k2) {
            if ((k1 & ~k2) == 0 || (k2 & ~k1) == 0) continue;
            std::vector<LinTerm> terms{LinTerm{gv[k1 | k2], Rat(1)}, LinTerm{gv[k1], Rat(-1)}, LinTerm{gv[k2], Rat(-1)}};
            if ((k1 & k2) != 0) terms.push_back(LinTerm{gv[k1 & k2], Rat(1)});
            sys.add_le(std::move(terms), Rat(0));
        }
    for (int i = 1; i <= n; ++i) {
        MsgSet bi = p.b(i);
        std::vector<LinTerm> terms{LinTerm{i - 1, Rat(1)}, LinTerm{gv[bi | msg_bit(i)], Rat(-1)}};
        if (bi != 0) terms.push_back(LinTerm{gv[bi], Rat(1)});
        sys.add_le(std::move(terms), Rat(0));
    }
    return out;
}

// --- generators --------------------------------------------------------------

namespace {
ServerSet default_ground(const Problem& p, const std::optional<ServerSet>& ground) {
    return ground ? *ground : p.active_servers();
}
}  // namespace

Grouping individual_touch_grouping(const Problem& p, std::optional<ServerSet> ground) {
    ServerSet gr = default_ground(p, ground);
    std::vector<ServerSet> groups;
    for (int i = 1; i <= p.n(); ++i) groups.push_back(touch(p.n(), msg_bit(i)) & gr);
    return make_grouping(std::move(groups), std::move(gr), "touch");
}

Grouping aggregate_touch_grouping(const Problem& p, const std::vector<MsgSet>& parts,
                                  std::optional<ServerSet> ground) {
    MsgSet seen = 0;
    for (MsgSet part : parts) {
        if (part == 0) throw std::invalid_argument("aggregate touch: empty part");
        if (part & seen) throw std::invalid_argument("aggregate touch: parts overlap");
        seen |= part;
    }
    if (seen != full_mask(p.n())) throw std::invalid_argument("aggregate touch: parts must cover [n]");
    ServerSet gr = default_ground(p, ground);
    std::vector<ServerSet> groups;
    std::ostringstream label;
    label << "touch:";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        groups.push_back(touch(p.n(), parts[i]) & gr);
        if (i) label << '|';
        std::string s = msgset_to_string(parts[i]);
        label << s.substr(1, s.size() - 2);
    }
    return make_grouping(std::move(groups), std::move(gr), label.str());
}

Grouping fd2_grouping(const Problem& p, MsgSet k, MsgSet kp, std::optional<ServerSet> ground) {
    if (k == 0 || kp == 0 || (k & kp)) throw std::invalid_argument("fd2 needs disjoint nonempty message sets");
    ServerSet gr = default_ground(p, ground);
    ServerSet both = touch_both(p.n(), k, kp) & gr;
    ServerSet rest = set_minus(gr, both);
    std::vector<ServerSet> groups;
    if (!rest.empty()) groups.push_back(rest);
    if (!both.empty()) groups.push_back(both);
    std::string ks = msgset_to_string(k), kps = msgset_to_string(kp);
    return make_grouping(std::move(groups), std::move(gr),
                         "fd2:" + ks.substr(1, ks.size() - 2) + ";" + kps.substr(1, kps.size() - 2));
}

Grouping mfd_grouping(std::vector<ServerSet> parts, ServerSet ground, std::string label) {
    ServerSet seen(ground.universe());
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("mfd grouping: empty part");
        if (seen.intersects(part)) throw std::invalid_argument("mfd grouping: parts must be disjoint");
        seen |= part;
    }
    if (!(seen == ground)) throw std::invalid_argument("mfd grouping: parts must partition the ground set");
    return make_grouping(std::move(parts), std::move(ground), std::move(label));
}

Grouping single_server_grouping(ServerSet ground) {
    std::vector<ServerSet> groups;
    ground.for_each([&](MsgSet j) {
        ServerSet one(ground.universe());
        one.insert(j);
        groups.push_back(std::move(one));
    });
    return make_grouping(std::move(groups), std::move(ground), "singleserver");
}

Grouping all_server_grouping(ServerSet ground) {
    std::vector<ServerSet> groups{ground};
    return make_grouping(std::move(groups), std::move(ground), "allserver");
}

bool is_refinement(const Grouping& fine, const Grouping& coarse) {
    if (!(fine.ground == coarse.ground)) throw std::invalid_argument("refinement check: ground mismatch");
    for (const auto& q : coarse.groups) {
        ServerSet u(q.universe());
        for (const auto& part : fine.groups)
            if (part.is_subset_of(q)) u |= part;
        if (!(u == q)) return false;
    }
    return true;
}

Grouping intersect_groupings(const Grouping& a, const Grouping& b) {
    if (!(a.ground == b.ground)) throw std::invalid_argument("intersect: ground mismatch");
    std::vector<ServerSet> groups;
    for (const auto& pa : a.groups)
        for (const auto& pb : b.groups) {
            ServerSet g = pa & pb;
            if (g.empty()) continue;
            if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(std::move(g));
        }
    std::string label = "intersect:" + (a.label.empty() ? std::string("a") : a.label) + "," +
                        (b.label.empty() ? std::string("b") : b.label);
    return make_grouping(std::move(groups), a.ground, std::move(label));
}

// --- search ------------------------------------------------------------------

const char* family_name(GroupingFamily f) {
    switch (f) {
        case GroupingFamily::AllServer: return "all_server";
        case GroupingFamily::IndividualTouch: return "individual_touch";
        case GroupingFamily::Fd2AllPairs: return "fd2_all_pairs";
        case GroupingFamily::TouchCrossFd2: return "touch_cross_fd2";
    }
    return "?";
}

namespace {

std::vector<std::pair<MsgSet, MsgSet>> disjoint_pairs(int n) {
    std::vector<std::pair<MsgSet, MsgSet>> out;
    MsgSet full = full_mask(n);
    for (MsgSet k = 1; k <= full; ++k) {
        MsgSet rest = full & ~k;
        for (MsgSet kp = rest; kp != 0; kp = (kp - 1) & rest)
            if (kp > k) out.emplace_back(k, kp);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SearchResult search_upper(const Problem& p, GroupingFamily family, const std::vector<Rat>& weights,
                          const OuterOptions& opts) {
    ServerSet ground = p.active_servers();
    auto consider = [&](SearchResult& best, bool& have, const Grouping& g) {
        try {
            Rat v = grouping_pm_bound(p, g, weights, opts);
            if (!have || v < best.value) {
                best.value = v;
                best.grouping = g;
                have = true;
            }
        } catch (const CapExceeded& e) {
            best.skipped.push_back(g.label + ": " + e.what());
        }
    };
    SearchResult best;
    bool have = false;
    switch (family) {
        case GroupingFamily::AllServer:
            consider(best, have, all_server_grouping(ground));
            break;
        case GroupingFamily::IndividualTouch:
            consider(best, have, individual_touch_grouping(p));
            break;
        case GroupingFamily::Fd2AllPairs:
            for (auto [k, kp] : disjoint_pairs(p.n())) {
                Grouping g = fd2_grouping(p, k, kp);
                if (g.groups.size() < 2) continue;  // degenerate pair
                consider(best, have, g);
            }
            break;
        case GroupingFamily::TouchCrossFd2: {
            Grouping touch_g = individual_touch_grouping(p);
            for (auto [k, kp] : disjoint_pairs(p.n())) {
                Grouping g = fd2_grouping(p, k, kp);
                if (g.groups.size() < 2) continue;
                consider(best, have, intersect_groupings(touch_g, g));
            }
            break;
        }
    }
    if (!have) throw CapExceeded("search family produced no evaluable grouping");
    return best;
}

}  // namespace dix
