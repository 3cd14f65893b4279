#include <doctest.h>

#include <random>

#include "dix/fme.hpp"

using namespace dix;

TEST_CASE("redundancy checks") {
    IneqSystem sys;
    int x = sys.add_var("x"), y = sys.add_var("y");
    sys.add_le({{x, Rat(1)}}, Rat(1));
    CHECK(is_redundant(Constraint{{{x, Rat(1)}}, Rel::Le, Rat(2)}, sys));
    CHECK(!is_redundant(Constraint{{{x, Rat(1)}}, Rel::Le, Rat(1) / 2}, sys));
    sys.add_le({{y, Rat(1)}}, Rat(1));
    CHECK(is_redundant(Constraint{{{x, Rat(1)}, {y, Rat(1)}}, Rel::Le, Rat(2)}, sys));
}

TEST_CASE("eliminating one variable") {
    IneqSystem sys;
    int x = sys.add_var("x"), y = sys.add_var("y");
    sys.add_le({{x, Rat(1)}, {y, Rat(1)}}, Rat(2));
    sys.add_le({{x, Rat(1)}, {y, Rat(-1)}}, Rat(0));
    IneqSystem out = fme_eliminate(sys, {y});
    REQUIRE(out.rows.size() == 1);
    CHECK(out.row_to_string(out.rows[0]) == "x <= 1");
}

TEST_CASE("eliminating an absent variable is a no-op") {
    IneqSystem sys;
    int x = sys.add_var("x");
    sys.add_var("y");
    sys.add_le({{x, Rat(1)}}, Rat(5));
    IneqSystem out = fme_eliminate(sys, {1});
    CHECK(out.rows.size() == 1);
}

TEST_CASE("projection soundness on random systems") {
    // a rational point satisfies the projection iff it extends to the
    // original system; checked by sampling
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        IneqSystem sys;
        int nkeep = 2, nelim = 1 + static_cast<int>(rng() % 2);
        for (int v = 0; v < nkeep + nelim; ++v) sys.add_var("v" + std::to_string(v));
        int rows = 3 + static_cast<int>(rng() % 4);
        for (int i = 0; i < rows; ++i) {
            std::vector<LinTerm> terms;
            for (int v = 0; v < nkeep + nelim; ++v) {
                int coef = static_cast<int>(rng() % 5) - 2;
                if (coef != 0) terms.push_back({v, Rat(coef)});
            }
            sys.add_le(std::move(terms), Rat(static_cast<int>(rng() % 5)));
        }
        std::vector<int> elim;
        for (int v = nkeep; v < nkeep + nelim; ++v) elim.push_back(v);
        IneqSystem proj = fme_eliminate(sys, elim);

        for (int sample = 0; sample < 20; ++sample) {
            Rat p0(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2));
            Rat p1(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2));
            auto satisfied = [&](const IneqSystem& s, const std::vector<Rat>& x) {
                for (const auto& row : s.rows) {
                    Rat lhs = 0;
                    for (const auto& t : row.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
                    if (lhs > row.rhs) return false;
                }
                return true;
            };
            std::vector<Rat> point(static_cast<std::size_t>(nkeep + nelim), Rat(0));
            point[0] = p0;
            point[1] = p1;
            bool in_projection = satisfied(proj, point);
            // extension exists iff the original system with v0, v1 pinned is feasible
            LinearProgram ext;
            for (int v = 0; v < nkeep + nelim; ++v) ext.add_var("v" + std::to_string(v), false);
            for (const auto& row : sys.rows) ext.add_le(row.terms, row.rhs);
            ext.add_eq({{0, Rat(1)}}, p0);
            ext.add_eq({{1, Rat(1)}}, p1);
            ext.set_objective(Sense::Maximize, {});
            bool extends = lp_solve(ext).status != LpStatus::Infeasible;
            CHECK(in_projection == extends);
        }
    }
}
