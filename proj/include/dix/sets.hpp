#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dix {

// A set of messages as a bitmask: message i (1-based) <-> bit (i-1).
// A server is identified by the set of messages it stores, so MsgSet
// doubles as a server id. The empty mask is the dummy server.
using MsgSet = std::uint32_t;

inline constexpr int kMaxMessages = 16;

constexpr MsgSet msg_bit(int i) { return MsgSet{1} << (i - 1); }
constexpr bool msg_in(MsgSet s, int i) { return (s >> (i - 1)) & 1; }
constexpr MsgSet full_mask(int n) { return (MsgSet{1} << n) - 1; }
int popcount(MsgSet s);
MsgSet msgset_of(std::initializer_list<int> xs);
std::vector<int> msgset_to_list(MsgSet s);
// "{1,3}" ; "{}" for the empty set
std::string msgset_to_string(MsgSet s);

// A family of subsets of [n]: one bit per mask in 0 .. 2^n-1.
// ServerSet is the same structure restricted to nonempty masks.
class SubsetFamily {
public:
    SubsetFamily() : n_(0), words_(1, 0) {}
    explicit SubsetFamily(int n) : n_(n), words_(word_count(n), 0) {}

    int universe() const { return n_; }
    std::size_t capacity() const { return std::size_t{1} << n_; }

    bool contains(MsgSet m) const { return (words_[m >> 6] >> (m & 63)) & 1; }
    void insert(MsgSet m) { words_[m >> 6] |= std::uint64_t{1} << (m & 63); }
    void erase(MsgSet m) { words_[m >> 6] &= ~(std::uint64_t{1} << (m & 63)); }

    std::size_t count() const;
    bool empty() const;

    SubsetFamily& operator|=(const SubsetFamily& o);
    SubsetFamily& operator&=(const SubsetFamily& o);
    SubsetFamily& subtract(const SubsetFamily& o);  // this \ o
    SubsetFamily& complement_nonempty();            // nonempty masks not in this

    friend SubsetFamily operator|(SubsetFamily a, const SubsetFamily& b) { return a |= b; }
    friend SubsetFamily operator&(SubsetFamily a, const SubsetFamily& b) { return a &= b; }
    friend SubsetFamily set_minus(SubsetFamily a, const SubsetFamily& b) { return a.subtract(b); }

    bool operator==(const SubsetFamily& o) const = default;
    bool is_subset_of(const SubsetFamily& o) const;
    bool intersects(const SubsetFamily& o) const;

    // (a xor b) intersects t / (a and b) intersects t, allocation-free.
    static bool symdiff_intersects(const SubsetFamily& a, const SubsetFamily& b, const SubsetFamily& t);
    static bool and_intersects(const SubsetFamily& a, const SubsetFamily& b, const SubsetFamily& t);

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                f(static_cast<MsgSet>((w << 6) | b));
            }
        }
    }
    std::vector<MsgSet> to_vector() const;

    std::size_t hash() const;
    // "{{1},{1,2}}"
    std::string to_string() const;

private:
    static std::size_t word_count(int n) {
        std::size_t bits = std::size_t{1} << n;
        return bits <= 64 ? 1 : bits / 64;
    }
    int n_;
    std::vector<std::uint64_t> words_;
};

using ServerSet = SubsetFamily;

struct ServerSetHash {
    std::size_t operator()(const SubsetFamily& s) const { return s.hash(); }
};

// --- touch structure -------------------------------------------------------

// T_K: nonempty servers J with J & K != 0.
ServerSet touch(int n, MsgSet k);
// T_{K,L}: touches both.
ServerSet touch_both(int n, MsgSet k, MsgSet l);
// T_{K,~L}: touches K, misses L.
ServerSet touch_first_not_second(int n, MsgSet k, MsgSet l);
// T_{~K}: nonempty servers missing K.
ServerSet not_touch(int n, MsgSet k);

// --- completions -----------------------------------------------------------

// Union of 2^J over servers J in p; includes the empty mask when p is nonempty.
SubsetFamily subset_completion(const ServerSet& p);
// Nonempty supersets of members of m (the empty server is never included).
ServerSet superset_completion(int n, const SubsetFamily& m);

// All nonempty subsets of [n] as a ServerSet.
ServerSet all_servers(int n);

}  // namespace dix
