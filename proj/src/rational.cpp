#include "dix/rational.hpp"

#include <cctype>

namespace dix {

std::optional<Rat> parse_rat(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
        if (s.empty()) return std::nullopt;
    }

    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    Rat out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits(num) || !digits(den)) return std::nullopt;
        mpz_class d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        out = Rat(mpz_class(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if (!ip.empty() && !digits(ip)) return std::nullopt;
        if (!fp.empty() && !digits(fp)) return std::nullopt;
        mpz_class scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip), 10);
        mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp), 10);
        out = Rat(whole * scale + frac, scale);
    } else {
        if (!digits(s)) return std::nullopt;
        out = Rat(mpz_class(std::string(s), 10));
    }
    out.canonicalize();
    if (neg) out = -out;
    return out;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_to_decimal4(const Rat& r) {
    mpz_class num = r.get_num(), den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    // round(|r| * 10^4)
    mpz_class scaled = num * 10000;
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (rem * 2 >= den) q += 1;
    mpz_class ip = q / 10000, fp = q % 10000;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), 4 - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

std::string rat_pretty(const Rat& r) {
    if (r.get_den() == 1) return rat_to_string(r);
    return rat_to_string(r) + " ~ " + rat_to_decimal4(r);
}

}  // namespace dix
