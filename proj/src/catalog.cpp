#include <array>
#include <mutex>
#include <stdexcept>

#include "dix/problem.hpp"

namespace dix {

namespace {

// Side information sequences for the 218 non-isomorphic four-message
// problems, indexed by problem number - 1.
constexpr std::array<const char*, 218> kSequences = {
    "(1|-),(2|-),(3|-),(4|-)",          // 1
    "(1|2),(2|-),(3|-),(4|-)",          // 2
    "(1|2,3),(2|-),(3|-),(4|-)",        // 3
    "(1|-),(2|-),(3|4),(4|3)",          // 4
    "(1|-),(2|-),(3|4),(4|2)",          // 5
    "(1|-),(2|-),(3|2),(4|2)",          // 6
    "(1|-),(2|-),(3|2),(4|1)",          // 7
    "(1|2,3,4),(2|-),(3|-),(4|-)",      // 8
    "(1|-),(2|-),(3|4),(4|2,3)",        // 9
    "(1|-),(2|-),(3|4),(4|1,2)",        // 10
    "(1|-),(2|-),(3|2),(4|2,3)",        // 11
    "(1|-),(2|-),(3|2),(4|1,3)",        // 12
    "(1|-),(2|-),(3|2),(4|1,2)",        // 13
    "(1|-),(2|4),(3|4),(4|3)",          // 14
    "(1|-),(2|4),(3|4),(4|1)",          // 15
    "(1|-),(2|4),(3|2),(4|3)",          // 16
    "(1|-),(2|4),(3|2),(4|1)",          // 17
    "(1|-),(2|4),(3|1),(4|2)",          // 18
    "(1|-),(2|4),(3|1),(4|1)",          // 19
    "(1|-),(2|1),(3|1),(4|1)",          // 20
    "(1|2,3,4),(2|1),(3|-),(4|-)",      // 21
    "(1|-),(2|-),(3|2),(4|1,2,3)",      // 22
    "(1|-),(2|-),(3|2,4),(4|2,3)",      // 23
    "(1|-),(2|-),(3|2,4),(4|1,3)",      // 24
    "(1|-),(2|-),(3|2,4),(4|1,2)",      // 25
    "(1|-),(2|-),(3|1,2),(4|1,2)",      // 26
    "(1|-),(2|4),(3|4),(4|2,3)",        // 27
    "(1|-),(2|4),(3|4),(4|1,3)",        // 28
    "(1|-),(2|4),(3|2),(4|2,3)",        // 29
    "(1|-),(2|4),(3|2),(4|1,3)",        // 30
    "(1|-),(2|4),(3|2),(4|1,2)",        // 31
    "(1|-),(2|4),(3|2,4),(4|2)",        // 32
    "(1|-),(2|4),(3|2,4),(4|1)",        // 33
    "(1|-),(2|4),(3|1),(4|2,3)",        // 34
    "(1|-),(2|4),(3|1),(4|1,3)",        // 35
    "(1|-),(2|4),(3|1),(4|1,2)",        // 36
    "(1|-),(2|4),(3|1,4),(4|2)",        // 37
    "(1|-),(2|4),(3|1,4),(4|1)",        // 38
    "(1|-),(2|4),(3|1,2),(4|1)",        // 39
    "(1|-),(2|3,4),(3|1),(4|1)",        // 40
    "(1|-),(2|1),(3|1),(4|1,3)",        // 41
    "(1|4),(2|4),(3|4),(4|3)",          // 42
    "(1|4),(2|4),(3|2),(4|3)",          // 43
    "(1|4),(2|4),(3|2),(4|2)",          // 44
    "(1|4),(2|4),(3|2),(4|1)",          // 45
    "(1|4),(2|3),(3|2),(4|1)",          // 46
    "(1|4),(2|3),(3|1),(4|2)",          // 47
    "(1|2,3,4),(2|1,3),(3|-),(4|-)",    // 48
    "(1|-),(2|-),(3|1,2),(4|1,2,3)",    // 49
    "(1|-),(2|4),(3|4),(4|1,2,3)",      // 50
    "(1|-),(2|4),(3|2),(4|1,2,3)",      // 51
    "(1|-),(2|4),(3|2,4),(4|2,3)",      // 52
    "(1|-),(2|4),(3|2,4),(4|1,3)",      // 53
    "(1|-),(2|4),(3|2,4),(4|1,2)",      // 54
    "(1|-),(2|4),(3|1),(4|1,2,3)",      // 55
    "(1|-),(2|4),(3|1,4),(4|2,3)",      // 56
    "(1|-),(2|4),(3|1,4),(4|1,3)",      // 57
    "(1|-),(2|4),(3|1,4),(4|1,2)",      // 58
    "(1|-),(2|4),(3|1,2),(4|2,3)",      // 59
    "(1|-),(2|4),(3|1,2),(4|1,3)",      // 60
    "(1|-),(2|4),(3|1,2),(4|1,2)",      // 61
    "(1|-),(2|4),(3|1,2,4),(4|2)",      // 62
    "(1|-),(2|4),(3|1,2,4),(4|1)",      // 63
    "(1|-),(2|3,4),(3|2,4),(4|1)",      // 64
    "(1|-),(2|3,4),(3|1),(4|1,3)",      // 65
    "(1|-),(2|3,4),(3|1),(4|1,2)",      // 66
    "(1|-),(2|1),(3|1),(4|1,2,3)",      // 67
    "(1|-),(2|1),(3|1,4),(4|1,3)",      // 68
    "(1|-),(2|1),(3|1,4),(4|1,2)",      // 69
    "(1|-),(2|1),(3|1,2),(4|1,2)",      // 70
    "(1|4),(2|4),(3|4),(4|2,3)",        // 71
    "(1|4),(2|4),(3|2),(4|2,3)",        // 72
    "(1|4),(2|4),(3|2),(4|1,3)",        // 73
    "(1|4),(2|4),(3|2),(4|1,2)",        // 74
    "(1|4),(2|4),(3|2,4),(4|3)",        // 75
    "(1|4),(2|4),(3|2,4),(4|2)",        // 76
    "(1|4),(2|4),(3|2,4),(4|1)",        // 77
    "(1|4),(2|4),(3|1,2),(4|3)",        // 78
    "(1|4),(2|4),(3|1,2),(4|2)",        // 79
    "(1|4),(2|3),(3|2),(4|2,3)",        // 80
    "(1|4),(2|3),(3|2),(4|1,3)",        // 81
    "(1|4),(2|3),(3|2,4),(4|2)",        // 82
    "(1|4),(2|3),(3|1),(4|2,3)",        // 83
    "(1|4),(2|3),(3|1),(4|1,2)",        // 84
    "(1|4),(2|3,4),(3|1),(4|3)",        // 85
    "(1|2,3,4),(2|1,3,4),(3|-),(4|-)",  // 86
    "(1|-),(2|4),(3|2,4),(4|1,2,3)",    // 87
    "(1|-),(2|4),(3|1,4),(4|1,2,3)",    // 88
    "(1|-),(2|4),(3|1,2),(4|1,2,3)",    // 89
    "(1|-),(2|4),(3|1,2,4),(4|2,3)",    // 90
    "(1|-),(2|4),(3|1,2,4),(4|1,3)",    // 91
    "(1|-),(2|4),(3|1,2,4),(4|1,2)",    // 92
    "(1|-),(2|3,4),(3|2,4),(4|2,3)",    // 93
    "(1|-),(2|3,4),(3|2,4),(4|1,3)",    // 94
    "(1|-),(2|3,4),(3|1),(4|1,2,3)",    // 95
    "(1|-),(2|3,4),(3|1,4),(4|1,3)",    // 96
    "(1|-),(2|3,4),(3|1,4),(4|1,2)",    // 97
    "(1|-),(2|3,4),(3|1,2),(4|1,2)",    // 98
    "(1|-),(2|1),(3|1,4),(4|1,2,3)",    // 99
    "(1|-),(2|1),(3|1,2),(4|1,2,3)",    // 100
    "(1|-),(2|1,4),(3|1,4),(4|1,3)",    // 101
    "(1|-),(2|1,4),(3|1,2),(4|1,3)",    // 102
    "(1|4),(2|4),(3|4),(4|1,2,3)",      // 103
    "(1|4),(2|4),(3|2),(4|1,2,3)",      // 104
    "(1|4),(2|4),(3|2,4),(4|2,3)",      // 105
    "(1|4),(2|4),(3|2,4),(4|1,3)",      // 106
    "(1|4),(2|4),(3|2,4),(4|1,2)",      // 107
    "(1|4),(2|4),(3|1,2),(4|2,3)",      // 108
    "(1|4),(2|4),(3|1,2),(4|1,2)",      // 109
    "(1|4),(2|4),(3|1,2,4),(4|3)",      // 110
    "(1|4),(2|4),(3|1,2,4),(4|2)",      // 111
    "(1|4),(2|3),(3|2),(4|1,2,3)",      // 112
    "(1|4),(2|3),(3|2,4),(4|2,3)",      // 113
    "(1|4),(2|3),(3|2,4),(4|1,3)",      // 114
    "(1|4),(2|3),(3|2,4),(4|1,2)",      // 115
    "(1|4),(2|3),(3|1),(4|1,2,3)",      // 116
    "(1|4),(2|3),(3|1,4),(4|2,3)",      // 117
    "(1|4),(2|3),(3|1,4),(4|1,2)",      // 118
    "(1|4),(2|3),(3|1,2),(4|1,2)",      // 119
    "(1|4),(2|3,4),(3|2,4),(4|3)",      // 120
    "(1|4),(2|3,4),(3|2,4),(4|1)",      // 121
    "(1|4),(2|3,4),(3|1),(4|2,3)",      // 122
    "(1|4),(2|3,4),(3|1),(4|1,3)",      // 123
    "(1|4),(2|3,4),(3|1),(4|1,2)",      // 124
    "(1|4),(2|3,4),(3|1,4),(4|3)",      // 125
    "(1|4),(2|3,4),(3|1,4),(4|2)",      // 126
    "(1|4),(2|3,4),(3|1,4),(4|1)",      // 127
    "(1|4),(2|3,4),(3|1,2),(4|3)",      // 128
    "(1|4),(2|3,4),(3|1,2),(4|1)",      // 129
    "(1|4),(2|1),(3|1,2),(4|2,3)",      // 130
    "(1|4),(2|1),(3|1,2),(4|1,2)",      // 131
    "(1|4),(2|1),(3|1,2,4),(4|2)",      // 132
    "(1|4),(2|1,4),(3|1,4),(4|1)",      // 133
    "(1|2,3,4),(2|1,3,4),(3|1),(4|-)",  // 134
    "(1|-),(2|3,4),(3|2,4),(4|1,2,3)",  // 135
    "(1|-),(2|3,4),(3|1,4),(4|1,2,3)",  // 136
    "(1|-),(2|3,4),(3|1,2),(4|1,2,3)",  // 137
    "(1|-),(2|1),(3|1,2,4),(4|1,2,3)",  // 138
    "(1|-),(2|1,4),(3|1,4),(4|1,2,3)",  // 139
    "(1|-),(2|1,4),(3|1,2),(4|1,2,3)",  // 140
    "(1|-),(2|1,4),(3|1,2,4),(4|1,2)",  // 141
    "(1|4),(2|4),(3|2,4),(4|1,2,3)",    // 142
    "(1|4),(2|4),(3|1,2),(4|1,2,3)",    // 143
    "(1|4),(2|4),(3|1,2,4),(4|2,3)",    // 144
    "(1|4),(2|4),(3|1,2,4),(4|1,2)",    // 145
    "(1|4),(2|3),(3|2,4),(4|1,2,3)",    // 146
    "(1|4),(2|3),(3|1,4),(4|1,2,3)",    // 147
    "(1|4),(2|3),(3|1,2),(4|1,2,3)",    // 148
    "(1|4),(2|3,4),(3|2,4),(4|2,3)",    // 149
    "(1|4),(2|3,4),(3|2,4),(4|1,3)",    // 150
    "(1|4),(2|3,4),(3|1),(4|1,2,3)",    // 151
    "(1|4),(2|3,4),(3|1,4),(4|2,3)",    // 152
    "(1|4),(2|3,4),(3|1,4),(4|1,3)",    // 153
    "(1|4),(2|3,4),(3|1,4),(4|1,2)",    // 154
    "(1|4),(2|3,4),(3|1,2),(4|2,3)",    // 155
    "(1|4),(2|3,4),(3|1,2),(4|1,3)",    // 156
    "(1|4),(2|3,4),(3|1,2),(4|1,2)",    // 157
    "(1|4),(2|3,4),(3|1,2,4),(4|3)",    // 158
    "(1|4),(2|3,4),(3|1,2,4),(4|2)",    // 159
    "(1|4),(2|3,4),(3|1,2,4),(4|1)",    // 160
    "(1|4),(2|1),(3|1,2),(4|1,2,3)",    // 161
    "(1|4),(2|1),(3|1,2,4),(4|2,3)",    // 162
    "(1|4),(2|1),(3|1,2,4),(4|1,2)",    // 163
    "(1|4),(2|1,4),(3|1,4),(4|2,3)",    // 164
    "(1|4),(2|1,4),(3|1,4),(4|1,3)",    // 165
    "(1|4),(2|1,4),(3|1,2),(4|2,3)",    // 166
    "(1|4),(2|1,4),(3|1,2),(4|1,3)",    // 167
    "(1|4),(2|1,4),(3|1,2),(4|1,2)",    // 168
    "(1|4),(2|1,4),(3|1,2,4),(4|1)",    // 169
    "(1|4),(2|1,3),(3|1,2),(4|2,3)",    // 170
    "(1|4),(2|1,3),(3|1,2),(4|1,3)",    // 171
    "(1|2,3,4),(2|1,3,4),(3|1,2),(4|-)",  // 172
    "(1|-),(2|1,4),(3|1,2,4),(4|1,2,3)",  // 173
    "(1|4),(2|4),(3|1,2,4),(4|1,2,3)",    // 174
    "(1|4),(2|3),(3|1,2,4),(4|1,2,3)",    // 175
    "(1|4),(2|3,4),(3|2,4),(4|1,2,3)",    // 176
    "(1|4),(2|3,4),(3|1,4),(4|1,2,3)",    // 177
    "(1|4),(2|3,4),(3|1,2),(4|1,2,3)",    // 178
    "(1|4),(2|3,4),(3|1,2,4),(4|2,3)",    // 179
    "(1|4),(2|3,4),(3|1,2,4),(4|1,3)",    // 180
    "(1|4),(2|3,4),(3|1,2,4),(4|1,2)",    // 181
    "(1|4),(2|1),(3|1,2,4),(4|1,2,3)",    // 182
    "(1|4),(2|1,4),(3|1,4),(4|1,2,3)",    // 183
    "(1|4),(2|1,4),(3|1,2),(4|1,2,3)",    // 184
    "(1|4),(2|1,4),(3|1,2,4),(4|2,3)",    // 185
    "(1|4),(2|1,4),(3|1,2,4),(4|1,3)",    // 186
    "(1|4),(2|1,4),(3|1,2,4),(4|1,2)",    // 187
    "(1|4),(2|1,3),(3|1,2),(4|1,2,3)",    // 188
    "(1|4),(2|1,3),(3|1,2,4),(4|2,3)",    // 189
    "(1|4),(2|1,3),(3|1,2,4),(4|1,3)",    // 190
    "(1|4),(2|1,3),(3|1,2,4),(4|1,2)",    // 191
    "(1|4),(2|1,3,4),(3|1,2,4),(4|1)",    // 192
    "(1|3,4),(2|3,4),(3|2,4),(4|2,3)",    // 193
    "(1|3,4),(2|3,4),(3|2,4),(4|1,3)",    // 194
    "(1|3,4),(2|3,4),(3|2,4),(4|1,2)",    // 195
    "(1|3,4),(2|3,4),(3|1,2),(4|1,2)",    // 196
    "(1|3,4),(2|1,4),(3|2,4),(4|2,3)",    // 197
    "(1|3,4),(2|1,4),(3|1,2),(4|2,3)",    // 198
    "(1|2,3,4),(2|1,3,4),(3|1,2,4),(4|-)",    // 199
    "(1|4),(2|3,4),(3|1,2,4),(4|1,2,3)",      // 200
    "(1|4),(2|1,4),(3|1,2,4),(4|1,2,3)",      // 201
    "(1|4),(2|1,3),(3|1,2,4),(4|1,2,3)",      // 202
    "(1|4),(2|1,3,4),(3|1,2,4),(4|2,3)",      // 203
    "(1|4),(2|1,3,4),(3|1,2,4),(4|1,3)",      // 204
    "(1|3,4),(2|3,4),(3|2,4),(4|1,2,3)",      // 205
    "(1|3,4),(2|3,4),(3|1,2),(4|1,2,3)",      // 206
    "(1|3,4),(2|1,4),(3|2,4),(4|1,2,3)",      // 207
    "(1|3,4),(2|1,4),(3|1,2),(4|1,2,3)",      // 208
    "(1|3,4),(2|1,4),(3|1,2,4),(4|1,3)",      // 209
    "(1|3,4),(2|1,4),(3|1,2,4),(4|1,2)",      // 210
    "(1|3,4),(2|1,3,4),(3|1,4),(4|1,3)",      // 211
    "(1|2,3,4),(2|1,3,4),(3|1,2,4),(4|1)",    // 212
    "(1|3,4),(2|3,4),(3|1,2,4),(4|1,2,3)",    // 213
    "(1|3,4),(2|1,4),(3|1,2,4),(4|1,2,3)",    // 214
    "(1|3,4),(2|1,3,4),(3|1,4),(4|1,2,3)",    // 215
    "(1|3,4),(2|1,3,4),(3|1,2),(4|1,2,3)",    // 216
    "(1|2,3,4),(2|1,3,4),(3|1,2,4),(4|1,2)",  // 217
    "(1|2,3,4),(2|1,3,4),(3|1,2,4),(4|1,2,3)",  // 218
};

struct ValueGroup {
    const char* value;
    std::initializer_list<int> problems;
};

// Sum-capacities grouped as in the numerical results table. The first
// eight groups are settled by the all-server grouping, the next three by
// 2-fd groupings, then two- and three-part aggregate touch groupings.
const ValueGroup kValues[] = {
    {"15", {1, 2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 15, 17, 19, 20, 22, 25, 26, 33, 35, 38, 39, 40, 41, 49, 63, 65, 67, 69, 70, 100}},
    {"56/3", {47}},
    {"20", {43, 78, 83, 85, 130, 132}},
    {"22", {42, 44, 45, 71, 72, 73, 74, 75, 76, 77, 79, 80, 82, 84, 103, 104, 105, 106, 107, 108, 109, 110, 111, 113,
            116, 117, 118, 120, 122, 123, 124, 125, 126, 127, 128, 131, 133, 142, 143, 144, 145, 147, 151, 152, 153,
            154, 158, 159, 161, 162, 163, 164, 165, 166, 167, 168, 169, 174, 177, 182, 183, 184, 185, 186, 187, 201}},
    {"24", {114, 121, 129, 146, 150, 155, 156, 157, 160, 170, 171, 175, 178, 180, 181, 188, 189, 190, 191, 192, 194,
            195, 196, 197, 198, 202, 204, 206, 208, 210, 216}},
    {"26", {207}},
    {"28", {193, 205, 209, 211, 213, 214, 215, 217}},
    {"32", {218}},
    {"19", {16, 30, 60, 102}},
    {"70/3", {46}},
    {"47/2", {81, 112, 115, 119, 148}},
    {"19", {4, 9, 18, 21, 23, 24, 34, 36, 48, 55, 64, 66, 68, 86, 95, 99, 138}},
    {"21", {14, 27, 28, 29, 31, 32, 37, 50, 51, 52, 53, 54, 56, 57, 58, 59, 61, 62, 87, 88, 89, 90, 91, 92, 94, 96,
            97, 98, 101, 134, 136, 137, 139, 140, 141, 173}},
    {"26", {149, 176, 179, 200, 203, 212}},
    {"25", {93, 135, 172, 199}},
};

std::vector<CatalogEntry> build_catalog() {
    std::vector<std::string> values(218);
    for (const auto& group : kValues) {
        for (int no : group.problems) {
            if (no < 1 || no > 218 || !values[static_cast<std::size_t>(no - 1)].empty())
                throw std::logic_error("catalog table: bad or duplicate problem number");
            values[static_cast<std::size_t>(no - 1)] = group.value;
        }
    }
    std::vector<CatalogEntry> out;
    out.reserve(218);
    for (int no = 1; no <= 218; ++no) {
        const std::string& v = values[static_cast<std::size_t>(no - 1)];
        if (v.empty()) throw std::logic_error("catalog table: missing sum-capacity");
        out.push_back(CatalogEntry{no, kSequences[static_cast<std::size_t>(no - 1)], *parse_rat(v)});
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

Problem catalog_problem(int problem_no) {
    if (problem_no < 1 || problem_no > 218) throw ParseError("catalog problem number out of range");
    return parse_problem(catalog()[static_cast<std::size_t>(problem_no - 1)].sequence);
}

}  // namespace dix
