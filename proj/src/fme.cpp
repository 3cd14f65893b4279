#include "dix/fme.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dix {

int IneqSystem::add_var(std::string name) {
    var_names.push_back(std::move(name));
    return static_cast<int>(var_names.size()) - 1;
}

namespace {

void canon(std::vector<LinTerm>& terms) {
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

// Scale to a primitive integer vector so duplicates collide.
void normalize_row(Constraint& c) {
    mpz_class lcm = 1;
    for (const auto& t : c.terms) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coef.get_den().get_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rhs.get_den().get_mpz_t());
    mpz_class gcd = 0;
    for (const auto& t : c.terms) {
        mpz_class scaled = t.coef.get_num() * (lcm / t.coef.get_den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (gcd == 0) {
        mpz_class scaled = c.rhs.get_num() * (lcm / c.rhs.get_den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (gcd == 0) return;
    Rat factor(lcm, gcd);
    for (auto& t : c.terms) {
        t.coef *= factor;
        t.coef.canonicalize();
    }
    c.rhs *= factor;
    c.rhs.canonicalize();
}

std::string row_key(const Constraint& c) {
    std::ostringstream os;
    for (const auto& t : c.terms) os << t.var << ':' << rat_to_string(t.coef) << ';';
    os << '|' << rat_to_string(c.rhs);
    return os.str();
}

}  // namespace

void IneqSystem::add_le(std::vector<LinTerm> terms, Rat rhs) {
    canon(terms);
    rows.push_back(Constraint{std::move(terms), Rel::Le, std::move(rhs)});
    normalize_row(rows.back());
}

std::string IneqSystem::row_to_string(const Constraint& c) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : c.terms) {
        Rat a = abs(t.coef);
        if (first) {
            if (sgn(t.coef) < 0) os << '-';
        } else {
            os << (sgn(t.coef) < 0 ? " - " : " + ");
        }
        first = false;
        if (a != 1) os << rat_to_string(a) << '*';
        os << var_names[t.var];
    }
    if (first) os << '0';
    os << " <= " << rat_to_string(c.rhs);
    return os.str();
}

bool is_redundant(const Constraint& c, const IneqSystem& system, std::size_t skip_index) {
    LinearProgram lp;
    for (const auto& name : system.var_names) lp.add_var(name, /*nonneg=*/false);
    for (std::size_t i = 0; i < system.rows.size(); ++i) {
        if (i == skip_index) continue;
        lp.add_le(system.rows[i].terms, system.rows[i].rhs);
    }
    lp.set_objective(Sense::Maximize, c.terms);
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Infeasible) return true;
    if (r.status == LpStatus::Unbounded) return false;
    return r.value <= c.rhs;
}

bool is_redundant(const Constraint& c, const IneqSystem& system) {
    return is_redundant(c, system, static_cast<std::size_t>(-1));
}

void prune_redundant(IneqSystem& system) {
    for (std::size_t i = 0; i < system.rows.size();) {
        if (is_redundant(system.rows[i], system, i)) {
            system.rows.erase(system.rows.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
}

IneqSystem fme_eliminate(IneqSystem system, const std::vector<int>& vars, const FmeOptions& opts) {
    for (int v : vars) {
        std::vector<Constraint> pos, neg, rest;
        for (auto& row : system.rows) {
            auto it = std::find_if(row.terms.begin(), row.terms.end(), [v](const LinTerm& t) { return t.var == v; });
            if (it == row.terms.end())
                rest.push_back(std::move(row));
            else if (sgn(it->coef) > 0)
                pos.push_back(std::move(row));
            else
                neg.push_back(std::move(row));
        }
        std::set<std::string> seen;
        std::vector<Constraint> next;
        auto push = [&](Constraint c) {
            normalize_row(c);
            if (c.terms.empty()) {
                if (sgn(c.rhs) < 0) throw std::runtime_error("fme: inconsistent system");
                return;
            }
            if (seen.insert(row_key(c)).second) next.push_back(std::move(c));
        };
        for (auto& r : rest) push(std::move(r));
        for (const auto& p : pos) {
            Rat a;  // coef of v in p (positive)
            for (const auto& t : p.terms)
                if (t.var == v) a = t.coef;
            for (const auto& q : neg) {
                Rat bcoef;  // coef of v in q (negative)
                for (const auto& t : q.terms)
                    if (t.var == v) bcoef = t.coef;
                // a*q - b*p has zero v coefficient; both multipliers positive
                Rat mb = -bcoef;
                Constraint combo;
                combo.rel = Rel::Le;
                combo.terms.reserve(p.terms.size() + q.terms.size());
                for (const auto& t : q.terms) combo.terms.push_back(LinTerm{t.var, a * t.coef});
                for (const auto& t : p.terms) combo.terms.push_back(LinTerm{t.var, mb * t.coef});
                canon(combo.terms);
                combo.rhs = a * q.rhs + mb * p.rhs;
                push(std::move(combo));
                if (next.size() > opts.max_rows) throw std::runtime_error("fme: row cap exceeded");
            }
        }
        system.rows = std::move(next);
        if (opts.prune) prune_redundant(system);
    }
    return system;
}

}  // namespace dix
