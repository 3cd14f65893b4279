#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace dix {

// Exact rational number. mpq_class keeps values canonical (reduced,
// positive denominator), which the rest of the library relies on.
using Rat = mpq_class;

// Parses "7", "-3/4", or a finite decimal like "23.3333".
std::optional<Rat> parse_rat(std::string_view s);

// "70/3" or "21" for integers.
std::string rat_to_string(const Rat& r);

// Fixed 4-place decimal rendering, round half away from zero.
std::string rat_to_decimal4(const Rat& r);

// "21" for integers, "70/3 ~ 23.3333" otherwise.
std::string rat_pretty(const Rat& r);

}  // namespace dix
