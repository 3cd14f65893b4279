#include "dix/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <iostream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace dix {

namespace {

std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_rat(const Rat& r) {
    std::size_t h = mpz_get_ui(r.get_num().get_mpz_t());
    h = hash_combine(h, mpz_get_ui(r.get_den().get_mpz_t()));
    if (sgn(r) < 0) h = ~h;
    return h;
}

std::size_t hash_row(const std::vector<LinTerm>& terms, Rel rel, const Rat& rhs) {
    std::size_t h = rel == Rel::Le ? 17 : 31;
    for (const auto& t : terms) {
        h = hash_combine(h, std::size_t(t.var));
        h = hash_combine(h, hash_rat(t.coef));
    }
    return hash_combine(h, hash_rat(rhs));
}

void canonicalize_terms(std::vector<LinTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        Rat c = terms[i].coef;
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j].var == terms[i].var) c += terms[j++].coef;
        if (sgn(c) != 0) terms[out++] = LinTerm{terms[i].var, std::move(c)};
        i = j;
    }
    terms.resize(out);
}

}  // namespace

int LinearProgram::add_var(std::string name, bool nonneg) {
    names_.push_back(std::move(name));
    nonneg_.push_back(nonneg);
    return static_cast<int>(names_.size()) - 1;
}

bool LinearProgram::add(std::vector<LinTerm> terms, Rel rel, Rat rhs) {
    canonicalize_terms(terms);
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= num_vars()) throw std::invalid_argument("constraint references unknown variable");
    }
    if (terms.empty()) {
        bool ok = rel == Rel::Le ? sgn(rhs) >= 0 : sgn(rhs) == 0;
        if (ok) return false;  // vacuous, drop
        // keep an explicitly infeasible row so the solver reports it
    }
    std::size_t h = hash_row(terms, rel, rhs);
    auto& bucket = rows_by_hash_[h];
    for (std::size_t idx : bucket) {
        const Constraint& r = rows_[idx];
        if (r.rel != rel || r.rhs != rhs || r.terms.size() != terms.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (r.terms[i].var != terms[i].var || r.terms[i].coef != terms[i].coef) {
                same = false;
                break;
            }
        if (same) return false;
    }
    bucket.push_back(rows_.size());
    rows_.push_back(Constraint{std::move(terms), rel, std::move(rhs)});
    return true;
}

void LinearProgram::set_objective(Sense sense, std::vector<LinTerm> terms) {
    canonicalize_terms(terms);
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= num_vars()) throw std::invalid_argument("objective references unknown variable");
    }
    sense_ = sense;
    objective_ = std::move(terms);
}

void LinearProgram::dump(std::ostream& os) const {
    os << (sense_ == Sense::Maximize ? "maximize" : "minimize");
    for (const auto& t : objective_) os << ' ' << (sgn(t.coef) >= 0 ? "+" : "") << rat_to_string(t.coef) << '*' << names_[t.var];
    os << '\n';
    for (const auto& r : rows_) {
        bool first = true;
        for (const auto& t : r.terms) {
            if (!first) os << ' ';
            first = false;
            os << (sgn(t.coef) >= 0 ? "+" : "") << rat_to_string(t.coef) << '*' << names_[t.var];
        }
        if (first) os << '0';
        os << (r.rel == Rel::Le ? " <= " : " = ") << rat_to_string(r.rhs) << '\n';
    }
    for (int v = 0; v < num_vars(); ++v)
        if (nonneg_[v]) os << names_[v] << " >= 0\n";
}

// ---------------------------------------------------------------------------
// Core: revised simplex on  max c.x  s.t.  A x (<=|=) b, x >= 0,
// explicit basis inverse, Bland's rule in both phases.
// ---------------------------------------------------------------------------

namespace {

struct Core {
    int nstruct = 0;                                // structural columns
    std::vector<std::vector<std::pair<int, Rat>>> cols;  // column-major sparse
    std::vector<Rat> b;
    std::vector<Rel> rel;
    std::vector<Rat> c;  // per structural column
    bool record_pivots = false;

    // outputs
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> x;       // structural values
    Rat value;
    std::vector<Rat> y;       // row multipliers (w.r.t. rows as given, see run())
    std::vector<bool> flipped;
    long pivots = 0;
    std::vector<std::pair<int, int>> pivot_log;

    int m = 0;
    int total = 0;        // structural + slack + artificial
    int first_art = 0;    // first artificial column
    std::vector<int> basis;
    std::vector<char> in_basis;
    std::vector<std::vector<Rat>> binv;
    std::vector<Rat> xb;

    std::vector<Rat> col_dense;

    bool is_artificial(int j) const { return j >= first_art; }

    void pivot(int p, int j, const std::vector<Rat>& d) {
        Rat inv = 1 / d[p];
        auto& rowp = binv[p];
        for (int k = 0; k < m; ++k) rowp[k] *= inv;
        Rat theta = xb[p] * inv;
        for (int i = 0; i < m; ++i) {
            if (i == p || sgn(d[i]) == 0) continue;
            const Rat& di = d[i];
            auto& rowi = binv[i];
            for (int k = 0; k < m; ++k)
                if (sgn(rowp[k]) != 0) rowi[k] -= di * rowp[k];
            xb[i] -= theta * di;
        }
        xb[p] = theta;
        in_basis[basis[p]] = 0;
        basis[p] = j;
        in_basis[j] = 1;
        ++pivots;
        if (record_pivots) pivot_log.emplace_back(j, p);
    }

    // d = B^-1 * A_j
    void ftran(int j, std::vector<Rat>& d) const {
        for (int i = 0; i < m; ++i) d[i] = 0;
        for (const auto& [r, v] : cols[j])
            for (int i = 0; i < m; ++i)
                if (sgn(binv[i][r]) != 0) d[i] += binv[i][r] * v;
    }

    // Simplex iterations with the given objective (indexed over all
    // columns). Entering variables are priced by steepest reduced cost
    // while the objective moves; a degenerate stall switches to Bland's
    // rule, whose anti-cycling guarantee carries the termination proof
    // (each Bland stretch either finishes or strictly improves the
    // objective, and only finitely many improvements exist).
    // allow_art_enter: artificials may enter (phase 1 only).
    // Returns true when optimal, false when unbounded.
    bool iterate(const std::vector<Rat>& obj, bool allow_art_enter) {
        std::vector<Rat> yrow(m), d(m);
        constexpr int kStallLimit = 20;
        int stall = 0;
        bool bland = false;
        Rat last_obj = 0;
        for (int i = 0; i < m; ++i)
            if (sgn(obj[basis[i]]) != 0) last_obj += obj[basis[i]] * xb[i];
        while (true) {
            // y = c_B B^-1
            for (int k = 0; k < m; ++k) {
                yrow[k] = 0;
                for (int i = 0; i < m; ++i) {
                    const Rat& cb = obj[basis[i]];
                    if (sgn(cb) != 0 && sgn(binv[i][k]) != 0) yrow[k] += cb * binv[i][k];
                }
            }
            int enter = -1;
            Rat best_rc;
            for (int j = 0; j < total; ++j) {
                if (in_basis[j]) continue;
                if (is_artificial(j) && !allow_art_enter) continue;
                Rat rc = obj[j];
                for (const auto& [r, v] : cols[j])
                    if (sgn(yrow[r]) != 0) rc -= yrow[r] * v;
                if (sgn(rc) > 0) {
                    if (bland) {
                        enter = j;
                        break;  // first eligible in fixed order
                    }
                    if (enter < 0 || rc > best_rc) {
                        enter = j;
                        best_rc = std::move(rc);
                    }
                }
            }
            if (enter < 0) return true;
            ftran(enter, d);

            // Lexicographic ratio test: minimize (x_B[i], B^-1 row i)/d_i
            // in lex order over rows with d_i > 0. Equivalent to a
            // symbolic perturbation of b, so every pivot makes strict
            // lexicographic progress and no basis ever repeats.
            std::vector<int> ties;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (sgn(d[i]) <= 0) continue;
                Rat ratio = xb[i] / d[i];
                if (ties.empty() || ratio < best) {
                    best = std::move(ratio);
                    ties.assign(1, i);
                } else if (ratio == best) {
                    ties.push_back(i);
                }
            }
            if (ties.empty()) return false;  // unbounded
            for (int k = 0; k < m && ties.size() > 1; ++k) {
                Rat col_best;
                std::vector<int> keep;
                for (int i : ties) {
                    Rat ratio = binv[i][k] / d[i];
                    if (keep.empty() || ratio < col_best) {
                        col_best = std::move(ratio);
                        keep.assign(1, i);
                    } else if (ratio == col_best) {
                        keep.push_back(i);
                    }
                }
                ties = std::move(keep);
            }
            int leave = ties.front();
            pivot(leave, enter, d);
            static const bool debug = std::getenv("DIX_LP_DEBUG") != nullptr;
            if (debug && pivots % 100 == 0) {
                std::size_t maxbits = 0;
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < m; ++k)
                        maxbits = std::max(maxbits, mpz_sizeinbase(binv[i][k].get_num().get_mpz_t(), 2));
                std::cerr << "[lp] pivots=" << pivots << " bland=" << bland << " maxnumbits=" << maxbits << std::endl;
            }
            Rat now = 0;
            for (int i = 0; i < m; ++i)
                if (sgn(obj[basis[i]]) != 0) now += obj[basis[i]] * xb[i];
            if (now > last_obj) {
                last_obj = std::move(now);
                stall = 0;
                bland = false;
            } else if (!bland && ++stall >= kStallLimit) {
                bland = true;
            }
        }
    }

    void run() {
        m = static_cast<int>(b.size());
        flipped.assign(m, false);
        // flip rows to b >= 0
        for (int i = 0; i < m; ++i)
            if (sgn(b[i]) < 0) {
                flipped[i] = true;
                b[i] = -b[i];
            }
        for (int j = 0; j < nstruct; ++j)
            for (auto& [r, v] : cols[j])
                if (flipped[r]) v = -v;

        // slacks
        std::vector<int> slack_of(m, -1);
        for (int i = 0; i < m; ++i) {
            if (rel[i] != Rel::Le) continue;
            slack_of[i] = static_cast<int>(cols.size());
            cols.push_back({{i, flipped[i] ? Rat(-1) : Rat(1)}});
        }
        first_art = static_cast<int>(cols.size());
        // artificials where no +1 slack is available
        basis.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            if (slack_of[i] >= 0 && !flipped[i]) {
                basis[i] = slack_of[i];
            } else {
                basis[i] = static_cast<int>(cols.size());
                cols.push_back({{i, Rat(1)}});
            }
        }
        total = static_cast<int>(cols.size());
        in_basis.assign(total, 0);
        for (int i = 0; i < m; ++i) in_basis[basis[i]] = 1;
        binv.assign(m, std::vector<Rat>(m, Rat(0)));
        for (int i = 0; i < m; ++i) binv[i][i] = 1;
        xb = b;

        bool have_art = total > first_art;
        if (have_art) {
            std::vector<Rat> c1(total, Rat(0));
            for (int j = first_art; j < total; ++j) c1[j] = -1;
            bool opt = iterate(c1, true);
            assert(opt);
            (void)opt;
            Rat v1 = 0;
            for (int i = 0; i < m; ++i) v1 += c1[basis[i]] * xb[i];
            if (sgn(v1) != 0) {
                status = LpStatus::Infeasible;
                return;
            }
            // drive basic artificials out where possible
            std::vector<Rat> d(m);
            for (int p = 0; p < m; ++p) {
                if (!is_artificial(basis[p])) continue;
                for (int j = 0; j < first_art; ++j) {
                    if (in_basis[j]) continue;
                    Rat e = 0;
                    for (const auto& [r, v] : cols[j])
                        if (sgn(binv[p][r]) != 0) e += binv[p][r] * v;
                    if (sgn(e) != 0) {
                        ftran(j, d);
                        pivot(p, j, d);
                        break;
                    }
                }
                // an artificial left basic marks a redundant row; it stays
                // pinned at zero by the phase-2 guard
            }
        }

        std::vector<Rat> c2(total, Rat(0));
        for (int j = 0; j < nstruct; ++j) c2[j] = c[j];
        bool opt = iterate(c2, false);
        if (!opt) {
            status = LpStatus::Unbounded;
            return;
        }
        status = LpStatus::Optimal;
        x.assign(nstruct, Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < nstruct) x[basis[i]] = xb[i];
        value = 0;
        for (int j = 0; j < nstruct; ++j)
            if (sgn(c[j]) != 0) value += c[j] * x[j];
        // multipliers w.r.t. the (possibly flipped) equality rows; undo flips
        y.assign(m, Rat(0));
        for (int k = 0; k < m; ++k) {
            for (int i = 0; i < m; ++i) {
                const Rat& cb = c2[basis[i]];
                if (sgn(cb) != 0 && sgn(binv[i][k]) != 0) y[k] += cb * binv[i][k];
            }
            if (flipped[k]) y[k] = -y[k];
        }
    }
};

struct NormalizedLp {
    // core columns: one per nonneg var, plus a negated copy per free var
    int ncols = 0;
    std::vector<int> pos_col;  // var -> column
    std::vector<int> neg_col;  // var -> column of negated copy or -1
    std::vector<std::vector<std::pair<int, Rat>>> cols;
    std::vector<Rat> b;
    std::vector<Rel> rel;
    std::vector<Rat> c;  // maximize
    bool negate_value = false;
};

NormalizedLp normalize(const LinearProgram& lp) {
    NormalizedLp n;
    int nv = lp.num_vars();
    n.pos_col.resize(nv);
    n.neg_col.assign(nv, -1);
    for (int v = 0; v < nv; ++v) n.pos_col[v] = v;
    int next = nv;
    for (int v = 0; v < nv; ++v)
        if (!lp.var_nonneg(v)) n.neg_col[v] = next++;
    n.ncols = next;
    n.cols.resize(next);
    n.c.assign(next, Rat(0));

    const auto& rows = lp.constraints();
    n.b.reserve(rows.size());
    n.rel.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& t : rows[i].terms) {
            n.cols[n.pos_col[t.var]].emplace_back(static_cast<int>(i), t.coef);
            if (n.neg_col[t.var] >= 0) n.cols[n.neg_col[t.var]].emplace_back(static_cast<int>(i), -t.coef);
        }
        n.b.push_back(rows[i].rhs);
        n.rel.push_back(rows[i].rel);
    }
    n.negate_value = lp.sense() == Sense::Minimize;
    for (const auto& t : lp.objective()) {
        Rat coef = n.negate_value ? -t.coef : t.coef;
        n.c[n.pos_col[t.var]] = coef;
        if (n.neg_col[t.var] >= 0) n.c[n.neg_col[t.var]] = -coef;
    }
    return n;
}

LpResult extract_direct(const LinearProgram& lp, const NormalizedLp& n, Core& core) {
    LpResult res;
    res.status = core.status;
    res.pivots = core.pivots;
    res.pivot_log = std::move(core.pivot_log);
    if (core.status != LpStatus::Optimal) return res;
    res.value = n.negate_value ? -core.value : core.value;
    res.primal.resize(lp.num_vars());
    for (int v = 0; v < lp.num_vars(); ++v) {
        res.primal[v] = core.x[n.pos_col[v]];
        if (n.neg_col[v] >= 0) res.primal[v] -= core.x[n.neg_col[v]];
    }
    return res;
}

bool verify_primal(const LinearProgram& lp, const std::vector<Rat>& x, const Rat& want_value) {
    for (int v = 0; v < lp.num_vars(); ++v)
        if (lp.var_nonneg(v) && sgn(x[v]) < 0) return false;
    for (const auto& r : lp.constraints()) {
        Rat lhs = 0;
        for (const auto& t : r.terms) lhs += t.coef * x[t.var];
        if (r.rel == Rel::Le ? lhs > r.rhs : lhs != r.rhs) return false;
    }
    Rat obj = 0;
    for (const auto& t : lp.objective()) obj += t.coef * x[t.var];
    return obj == want_value;
}

}  // namespace

namespace {

LpResult lp_solve_lazy(const LinearProgram& lp, const SolveOptions& opts) {
    const auto& rows = lp.constraints();
    std::vector<char> active(rows.size(), 0);
    std::size_t active_count = 0;
    auto activate = [&](std::size_t i) {
        if (!active[i]) {
            active[i] = 1;
            ++active_count;
        }
    };
    // seed with equalities, short rows and every row touching an
    // objective variable, then top up in input order
    std::vector<char> in_obj(static_cast<std::size_t>(lp.num_vars()), 0);
    for (const auto& t : lp.objective()) in_obj[static_cast<std::size_t>(t.var)] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool touches_obj = false;
        for (const auto& t : rows[i].terms)
            if (in_obj[static_cast<std::size_t>(t.var)]) {
                touches_obj = true;
                break;
            }
        if (touches_obj || rows[i].rel == Rel::Eq || rows[i].terms.size() <= 2) activate(i);
    }
    std::size_t want = std::max<std::size_t>(2 * static_cast<std::size_t>(lp.num_vars()), 64);
    for (std::size_t i = 0; i < rows.size() && active_count < want; ++i) activate(i);

    SolveOptions sub_opts = opts;
    sub_opts.lazy_rows = false;
    long pivots = 0;
    while (true) {
        LinearProgram sub;
        for (int v = 0; v < lp.num_vars(); ++v) sub.add_var(lp.var_name(v), lp.var_nonneg(v));
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (active[i]) sub.add(rows[i].terms, rows[i].rel, rows[i].rhs);
        sub.set_objective(lp.sense(), lp.objective());
        LpResult res = lp_solve(sub, sub_opts);
        pivots += res.pivots;
        if (std::getenv("DIX_LP_DEBUG"))
            std::cerr << "[lazy] active=" << active_count << "/" << rows.size() << " pivots=" << res.pivots
                      << std::endl;
        if (res.status == LpStatus::Infeasible) {
            res.pivots = pivots;
            return res;  // a subset is already infeasible
        }
        if (res.status == LpStatus::Unbounded) {
            // pull in more rows; with everything active the verdict is final
            std::size_t before = active_count;
            std::size_t add = std::max<std::size_t>(before, 256);
            for (std::size_t i = 0; i < rows.size() && active_count < before + add; ++i) activate(i);
            if (active_count == before) {
                res.pivots = pivots;
                return res;
            }
            continue;
        }
        bool violated = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (active[i]) continue;
            Rat lhs = 0;
            for (const auto& t : rows[i].terms) lhs += t.coef * res.primal[static_cast<std::size_t>(t.var)];
            bool bad = rows[i].rel == Rel::Le ? lhs > rows[i].rhs : lhs != rows[i].rhs;
            if (bad) {
                activate(i);
                violated = true;
            }
        }
        if (!violated) {
            res.pivots = pivots;
            return res;
        }
    }
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp, const SolveOptions& opts) {
    NormalizedLp n = normalize(lp);
    std::size_t nrows = n.b.size();
    std::size_t ncols = static_cast<std::size_t>(n.ncols);

    if (opts.lazy_rows && nrows > std::max<std::size_t>(1024, 4 * ncols)) return lp_solve_lazy(lp, opts);

    bool via_dual = opts.allow_dual && nrows > 2 * ncols + 16;
    if (!via_dual) {
        Core core;
        core.nstruct = n.ncols;
        core.cols = n.cols;
        core.b = n.b;
        core.rel = n.rel;
        core.c = n.c;
        core.record_pivots = opts.record_pivots;
        core.run();
        return extract_direct(lp, n, core);
    }

    // Dual: min b.y  s.t.  sum_i A_ij y_i >= c_j for every column j,
    // y_i >= 0 for Le rows, free for Eq rows. In core form (maximize):
    // max -b.y  s.t.  -A^T y <= -c.
    Core core;
    int dual_cols = static_cast<int>(nrows);
    std::vector<int> dneg(nrows, -1);
    int next = dual_cols;
    for (std::size_t i = 0; i < nrows; ++i)
        if (n.rel[i] == Rel::Eq) dneg[i] = next++;
    core.nstruct = next;
    core.cols.resize(next);
    core.c.assign(next, Rat(0));
    for (std::size_t i = 0; i < nrows; ++i) {
        core.c[i] = -n.b[i];
        if (dneg[i] >= 0) core.c[dneg[i]] = n.b[i];
    }
    core.b.assign(ncols, Rat(0));
    core.rel.assign(ncols, Rel::Le);
    for (std::size_t j = 0; j < ncols; ++j) {
        core.b[j] = -n.c[j];
        for (const auto& [row, v] : n.cols[j]) {
            core.cols[row].emplace_back(static_cast<int>(j), -v);
            if (dneg[row] >= 0) core.cols[dneg[row]].emplace_back(static_cast<int>(j), v);
        }
    }
    core.record_pivots = opts.record_pivots;
    core.run();

    LpResult res;
    res.pivots = core.pivots;
    res.pivot_log = std::move(core.pivot_log);
    if (core.status == LpStatus::Optimal) {
        // Multiplier of dual row j is the primal value of core column j.
        std::vector<Rat> xcore(ncols);
        for (std::size_t j = 0; j < ncols; ++j) xcore[j] = core.y[j];
        std::vector<Rat> x(lp.num_vars());
        for (int v = 0; v < lp.num_vars(); ++v) {
            x[v] = xcore[n.pos_col[v]];
            if (n.neg_col[v] >= 0) x[v] -= xcore[n.neg_col[v]];
        }
        Rat value = -core.value;  // dual optimum in "maximize" orientation
        std::vector<Rat> check = x;
        Rat want = n.negate_value ? -value : value;
        if (verify_primal(lp, check, want)) {
            res.status = LpStatus::Optimal;
            res.value = want;
            res.primal = std::move(check);
            return res;
        }
        // strong duality must hold exactly; fall through to a direct solve
    } else if (core.status == LpStatus::Unbounded) {
        res.status = LpStatus::Infeasible;
        return res;
    } else {
        // dual infeasible: primal unbounded iff primal feasible
        bool origin_ok = true;
        for (std::size_t i = 0; i < nrows && origin_ok; ++i)
            origin_ok = n.rel[i] == Rel::Le ? sgn(n.b[i]) >= 0 : sgn(n.b[i]) == 0;
        if (origin_ok) {
            res.status = LpStatus::Unbounded;
            return res;
        }
    }
    SolveOptions direct = opts;
    direct.allow_dual = false;
    return lp_solve(lp, direct);
}

}  // namespace dix
