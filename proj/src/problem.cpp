#include "dix/problem.hpp"

#include <cctype>
#include <sstream>

namespace dix {

Problem::Problem(int n, std::vector<MsgSet> side_info, std::vector<Rat> capacities)
    : n_(n), side_info_(std::move(side_info)), capacity_(std::move(capacities)) {
    if (n_ < 1 || n_ > kMaxMessages) throw ParseError("message count out of range (1..16)");
    if (side_info_.size() != static_cast<std::size_t>(n_)) throw ParseError("side information count != n");
    if (capacity_.size() != (std::size_t{1} << n_)) throw ParseError("capacity table size != 2^n");
    for (Rat& cap : capacity_) cap.canonicalize();  // callers may pass unreduced fractions
    if (sgn(capacity_[0]) != 0) throw ParseError("the empty server must have zero capacity");
    MsgSet full = full_mask(n_);
    for (int i = 1; i <= n_; ++i) {
        MsgSet ai = a(i);
        if (ai & msg_bit(i)) throw ParseError("receiver " + std::to_string(i) + " lists itself as side information");
        if (ai & ~full) throw ParseError("side information out of range");
    }
    for (const Rat& cap : capacity_)
        if (sgn(cap) < 0) throw ParseError("capacities must be nonnegative");
}

ServerSet Problem::active_servers() const {
    ServerSet out(n_);
    for (MsgSet j = 1; j <= full_mask(n_); ++j)
        if (sgn(capacity_[j]) > 0) out.insert(j);
    return out;
}

Rat Problem::cap_sum(const ServerSet& servers) const {
    Rat total = 0;
    servers.for_each([&](MsgSet j) { total += capacity_[j]; });
    return total;
}

bool Problem::uniform_capacities() const {
    for (MsgSet j = 1; j <= full_mask(n_); ++j)
        if (capacity_[j] != 1) return false;
    return true;
}

std::string Problem::serialize() const {
    std::ostringstream os;
    for (int i = 1; i <= n_; ++i) {
        if (i > 1) os << ',';
        os << '(' << i << '|';
        MsgSet ai = a(i);
        if (ai == 0) {
            os << '-';
        } else {
            bool first = true;
            for (int x : msgset_to_list(ai)) {
                if (!first) os << ',';
                first = false;
                os << x;
            }
        }
        os << ')';
    }
    return os.str();
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<int> number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
    bool done() {
        skip_ws();
        return pos == s.size();
    }
};

MsgSet parse_msg_list(std::string_view text, int n, const char* what) {
    Cursor cur{text};
    MsgSet out = 0;
    while (true) {
        auto v = cur.number();
        if (!v) throw ParseError(std::string("malformed ") + what);
        if (*v < 1 || *v > n) throw ParseError(std::string(what) + ": index out of range");
        out |= msg_bit(*v);
        if (!cur.eat(',')) break;
    }
    if (!cur.done()) throw ParseError(std::string("malformed ") + what);
    return out;
}

}  // namespace

Problem parse_problem(std::string_view text, std::optional<int> n_opt) {
    // Split off capacity lines.
    std::string_view seq = text;
    std::vector<std::string_view> cap_lines;
    if (auto nl = text.find('\n'); nl != std::string_view::npos) {
        seq = text.substr(0, nl);
        std::string_view rest = text.substr(nl + 1);
        while (!rest.empty()) {
            auto e = rest.find('\n');
            std::string_view line = e == std::string_view::npos ? rest : rest.substr(0, e);
            rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e + 1);
            std::size_t a = 0, b = line.size();
            while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
            line = line.substr(a, b - a);
            if (!line.empty() && line[0] != '#') cap_lines.push_back(line);
        }
    }

    // Receiver sequence "(i|...)" in order.
    std::vector<MsgSet> side;
    Cursor cur{seq};
    while (true) {
        if (!cur.eat('(')) throw ParseError("malformed token: expected '('");
        auto idx = cur.number();
        if (!idx) throw ParseError("malformed token: expected receiver index");
        if (*idx != static_cast<int>(side.size()) + 1) {
            if (*idx >= 1 && *idx <= static_cast<int>(side.size())) throw ParseError("duplicate receiver " + std::to_string(*idx));
            throw ParseError("receiver indices must appear in order 1..n");
        }
        if (!cur.eat('|')) throw ParseError("malformed token: expected '|'");
        MsgSet ai = 0;
        if (cur.eat('-')) {
            // empty side information
        } else {
            while (true) {
                auto v = cur.number();
                if (!v) throw ParseError("malformed token: expected side information index");
                if (*v < 1) throw ParseError("index out of range");
                ai |= msg_bit(*v);
                if (!cur.eat(',')) break;
            }
        }
        if (!cur.eat(')')) throw ParseError("malformed token: expected ')'");
        side.push_back(ai);
        if (!cur.eat(',')) break;
    }
    if (!cur.done()) throw ParseError("trailing characters after sequence");

    int n = n_opt.value_or(static_cast<int>(side.size()));
    if (n != static_cast<int>(side.size())) throw ParseError("sequence length does not match n");
    if (n < 1 || n > kMaxMessages) throw ParseError("message count out of range (1..16)");
    for (int i = 1; i <= n; ++i) {
        if (side[static_cast<std::size_t>(i - 1)] & msg_bit(i)) throw ParseError("receiver " + std::to_string(i) + " lists itself as side information");
        if (side[static_cast<std::size_t>(i - 1)] & ~full_mask(n)) throw ParseError("index out of range");
    }

    Rat dflt = 1;
    std::vector<std::pair<MsgSet, Rat>> explicit_caps;
    for (auto line : cap_lines) {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("malformed capacity line (expected 'servers: value')");
        std::string_view lhs = line.substr(0, colon), rhs = line.substr(colon + 1);
        auto val = parse_rat(rhs);
        if (!val || sgn(*val) < 0) throw ParseError("malformed capacity value");
        std::size_t a = 0, b = lhs.size();
        while (a < b && std::isspace(static_cast<unsigned char>(lhs[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(lhs[b - 1]))) --b;
        lhs = lhs.substr(a, b - a);
        if (lhs == "default") {
            dflt = *val;
        } else {
            explicit_caps.emplace_back(parse_msg_list(lhs, n, "capacity server list"), *val);
        }
    }
    std::vector<Rat> caps(std::size_t{1} << n, dflt);
    caps[0] = 0;
    for (auto& [server, value] : explicit_caps) caps[server] = value;
    return Problem(n, std::move(side), std::move(caps));
}

MsgSet interfering_set(const Problem& p, int i) {
    if (i < 1 || i > p.n()) throw ParseError("receiver index out of range");
    return p.b(i);
}

}  // namespace dix
