#include "dix/sets.hpp"

#include <bit>
#include <cassert>
#include <sstream>

namespace dix {

int popcount(MsgSet s) { return std::popcount(s); }

MsgSet msgset_of(std::initializer_list<int> xs) {
    MsgSet m = 0;
    for (int x : xs) m |= msg_bit(x);
    return m;
}

std::vector<int> msgset_to_list(MsgSet s) {
    std::vector<int> out;
    while (s) {
        int b = std::countr_zero(s);
        s &= s - 1;
        out.push_back(b + 1);
    }
    return out;
}

std::string msgset_to_string(MsgSet s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i : msgset_to_list(s)) {
        if (!first) os << ',';
        first = false;
        os << i;
    }
    os << '}';
    return os.str();
}

std::size_t SubsetFamily::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool SubsetFamily::empty() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

SubsetFamily& SubsetFamily::operator|=(const SubsetFamily& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

SubsetFamily& SubsetFamily::operator&=(const SubsetFamily& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

SubsetFamily& SubsetFamily::subtract(const SubsetFamily& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

SubsetFamily& SubsetFamily::complement_nonempty() {
    std::size_t total = capacity();
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t mask = ~std::uint64_t{0};
        if (total < 64) mask = (std::uint64_t{1} << total) - 1;
        words_[i] = ~words_[i] & mask;
    }
    words_[0] &= ~std::uint64_t{1};  // drop the empty server
    return *this;
}

bool SubsetFamily::is_subset_of(const SubsetFamily& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool SubsetFamily::intersects(const SubsetFamily& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

bool SubsetFamily::symdiff_intersects(const SubsetFamily& a, const SubsetFamily& b, const SubsetFamily& t) {
    assert(a.n_ == b.n_ && a.n_ == t.n_);
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        if ((a.words_[i] ^ b.words_[i]) & t.words_[i]) return true;
    return false;
}

bool SubsetFamily::and_intersects(const SubsetFamily& a, const SubsetFamily& b, const SubsetFamily& t) {
    assert(a.n_ == b.n_ && a.n_ == t.n_);
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        if (a.words_[i] & b.words_[i] & t.words_[i]) return true;
    return false;
}

std::vector<MsgSet> SubsetFamily::to_vector() const {
    std::vector<MsgSet> out;
    out.reserve(count());
    for_each([&](MsgSet m) { out.push_back(m); });
    return out;
}

std::size_t SubsetFamily::hash() const {
    std::size_t h = std::hash<int>{}(n_);
    for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
    return h;
}

std::string SubsetFamily::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](MsgSet m) {
        if (!first) os << ',';
        first = false;
        os << msgset_to_string(m);
    });
    os << '}';
    return os.str();
}

ServerSet touch(int n, MsgSet k) {
    ServerSet out(n);
    for (MsgSet j = 1; j <= full_mask(n); ++j)
        if (j & k) out.insert(j);
    return out;
}

ServerSet touch_both(int n, MsgSet k, MsgSet l) {
    ServerSet out(n);
    for (MsgSet j = 1; j <= full_mask(n); ++j)
        if ((j & k) && (j & l)) out.insert(j);
    return out;
}

ServerSet touch_first_not_second(int n, MsgSet k, MsgSet l) {
    ServerSet out(n);
    for (MsgSet j = 1; j <= full_mask(n); ++j)
        if ((j & k) && !(j & l)) out.insert(j);
    return out;
}

ServerSet not_touch(int n, MsgSet k) {
    ServerSet out(n);
    for (MsgSet j = 1; j <= full_mask(n); ++j)
        if (!(j & k)) out.insert(j);
    return out;
}

SubsetFamily subset_completion(const ServerSet& p) {
    SubsetFamily out(p.universe());
    p.for_each([&](MsgSet j) {
        // all submasks of j, including 0
        MsgSet s = j;
        while (true) {
            out.insert(s);
            if (s == 0) break;
            s = (s - 1) & j;
        }
    });
    return out;
}

ServerSet superset_completion(int n, const SubsetFamily& m) {
    ServerSet out(n);
    MsgSet full = full_mask(n);
    m.for_each([&](MsgSet k) {
        MsgSet rest = full & ~k;
        MsgSet s = rest;
        while (true) {
            if ((k | s) != 0) out.insert(k | s);
            if (s == 0) break;
            s = (s - 1) & rest;
        }
    });
    return out;
}

ServerSet all_servers(int n) {
    ServerSet out(n);
    for (MsgSet j = 1; j <= full_mask(n); ++j) out.insert(j);
    return out;
}

}  // namespace dix
