#pragma once

// Frozen reference values for the certified range.  Window sums and case
// decimals carry 7 truncated digits, interval bounds 16; the tables were
// produced by an independent bignum implementation and pinned here.

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace fixtures {

struct WindowSum {
    std::uint64_t m;
    const char* printed; // truncated to 7 digits
};

// Every m in [6, 116] whose window reciprocal sum reaches 1.
inline constexpr WindowSum kWindowSums[] = {
    {6, "1.5434041"},   {7, "1.4225212"},   {8, "1.3193863"},   {9, "1.2297478"},
    {10, "1.1492575"},  {11, "1.0680405"},  {12, "1.0853025"},  {13, "1.0257181"},
    {14, "1.2314694"},  {15, "1.1804546"},  {16, "1.1265315"},  {17, "1.0822173"},
    {18, "1.0991689"},  {19, "1.2221015"},  {20, "1.2475906"},  {21, "1.2071602"},
    {22, "1.1687162"},  {23, "1.1321704"},  {24, "1.1449396"},  {25, "1.1196020"},
    {26, "1.0913227"},  {27, "1.0603527"},  {28, "1.0341865"},  {29, "1.0054409"},
    {30, "1.0155426"},  {33, "1.1196755"},  {34, "1.0982484"},  {35, "1.0746092"},
    {36, "1.0573066"},  {37, "1.0350309"},  {38, "1.0430168"},  {39, "1.0507825"},
    {40, "1.0327178"},  {41, "1.1255515"},  {42, "1.1327286"},  {43, "1.1136031"},
    {44, "1.1181906"},  {45, "1.1044477"},  {46, "1.0887949"},  {47, "1.0930962"},
    {48, "1.0993856"},  {49, "1.0847168"},  {50, "1.0703532"},  {51, "1.0562705"},
    {52, "1.0424881"},  {53, "1.0270561"},  {54, "1.0326429"},  {55, "1.0196123"},
    {56, "1.0032162"},  {59, "1.0824342"},  {60, "1.0891372"},  {61, "1.0757682"},
    {62, "1.0790256"},  {63, "1.0870206"},  {64, "1.0742800"},  {65, "1.0648374"},
    {66, "1.0509680"},  {67, "1.0388285"},  {68, "1.0447480"},  {69, "1.0344111"},
    {70, "1.0227899"},  {71, "1.0113491"},  {72, "1.0155372"},  {73, "1.0071561"},
    {74, "1.0098754"},  {75, "1.0138951"},  {76, "1.0045179"},  {95, "1.0010795"},
    {107, "1.0253732"}, {108, "1.0281605"}, {109, "1.0225837"}, {110, "1.0244085"},
    {111, "1.0180358"}, {112, "1.0198247"}, {113, "1.0135636"}, {114, "1.0162068"},
    {115, "1.0091786"}, {116, "1.0039439"},
};

inline constexpr std::size_t kWindowSumCount = std::size(kWindowSums);

inline bool window_sum_reaches_one(std::uint64_t m) {
    for (const WindowSum& row : kWindowSums)
        if (row.m == m) return true;
    return false;
}

struct ChainRow {
    std::uint64_t low;
    std::uint64_t high;
    std::uint64_t anchor;
    const char* bound; // truncated to 16 digits
};

// The certified descent over [117, 616000]: 39 intervals.
inline constexpr ChainRow kChain[] = {
    {369082, 616000, 616000, "0.9999991593207677"},
    {224908, 369081, 369082, "0.9999959672962696"},
    {137109, 224907, 224908, "0.9999941767019456"},
    {86560, 137108, 137109, "0.9999987486296166"},
    {55427, 86559, 86560, "0.9999999423225654"},
    {35839, 55426, 55427, "0.9999883697068876"},
    {23126, 35838, 35839, "0.9999972550170282"},
    {15524, 23125, 23126, "0.9999870747451364"},
    {10521, 15523, 15524, "0.9999874584423823"},
    {7262, 10520, 10521, "0.9999231087222659"},
    {5076, 7261, 7262, "0.9998065408376007"},
    {3650, 5075, 5076, "0.9999675617301641"},
    {2727, 3649, 3650, "0.9997961264756344"},
    {2051, 2726, 2727, "0.9997816138735548"},
    {1520, 2050, 2051, "0.9995923877281676"},
    {1225, 1519, 1520, "0.9996036149823209"},
    {973, 1224, 1225, "0.9994981933313146"},
    {761, 972, 973, "0.9992915012749527"},
    {647, 760, 761, "0.9993984867672043"},
    {537, 646, 647, "0.9993535191316464"},
    {436, 536, 537, "0.9989130488862409"},
    {373, 435, 436, "0.9987351473486275"},
    {302, 372, 373, "0.9979717710275172"},
    {276, 301, 302, "0.9991377639940270"},
    {247, 275, 276, "0.9988777819691358"},
    {235, 246, 247, "0.9984970198951270"},
    {231, 234, 235, "0.9973150702653643"},
    {209, 230, 231, "0.9967060348546101"},
    {199, 208, 209, "0.9992121722105937"},
    {196, 198, 199, "0.9956305194993691"},
    {193, 195, 196, "0.9972200131356343"},
    {175, 192, 193, "0.9991232242270136"},
    {153, 174, 175, "0.9993389169143417"},
    {145, 152, 153, "0.9989037623986698"},
    {141, 144, 145, "0.9987501028101473"},
    {126, 140, 141, "0.9940593621440685"},
    {120, 125, 126, "0.9989903372885136"},
    {118, 119, 120, "0.9952149802334176"},
    {117, 117, 118, "0.9987297176438807"},
};

inline constexpr std::size_t kChainRowCount = std::size(kChain);

struct ProfileBlock {
    std::uint64_t m_lo;
    std::uint64_t m_hi;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
};

// Reference lcm profiles L(m), valid at every m in the block that appears
// in kWindowSums.  (For the other m the window sum stays below 1 and no
// profile is ever consulted.)
inline const std::vector<ProfileBlock>& profile_blocks() {
    static const std::vector<ProfileBlock> blocks = {
        {6, 9, {{2, 4}, {3, 2}, {5, 1}, {7, 1}}},
        {10, 10, {{2, 5}, {3, 2}, {5, 1}, {7, 1}}},
        {11, 14, {{2, 5}, {3, 3}, {5, 1}, {7, 1}}},
        {15, 19, {{2, 5}, {3, 3}, {5, 2}, {7, 1}, {11, 1}}},
        {20, 30, {{2, 6}, {3, 3}, {5, 2}, {7, 1}, {11, 1}, {13, 1}}},
        {33, 38, {{2, 6}, {3, 4}, {5, 2}, {7, 1}, {11, 1}, {13, 1}, {17, 1}}},
        {39, 39, {{2, 7}, {3, 4}, {5, 2}, {7, 1}, {11, 1}, {13, 1}, {17, 1}}},
        {40, 41, {{2, 7}, {3, 4}, {5, 2}, {7, 2}, {11, 1}, {13, 1}, {17, 1}}},
        {42, 56, {{2, 7}, {3, 4}, {5, 2}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}}},
        {59, 59, {{2, 7}, {3, 4}, {5, 2}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}}},
        {60, 74,
         {{2, 7}, {3, 4}, {5, 2}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}}},
        {75, 76,
         {{2, 7}, {3, 4}, {5, 3}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}}},
        {95, 95,
         {{2, 8}, {3, 4}, {5, 3}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}}},
        {107, 108,
         {{2, 8},
          {3, 5},
          {5, 3},
          {7, 2},
          {11, 1},
          {13, 1},
          {17, 1},
          {19, 1},
          {23, 1},
          {29, 1}}},
        {109, 116,
         {{2, 8},
          {3, 5},
          {5, 3},
          {7, 2},
          {11, 1},
          {13, 1},
          {17, 1},
          {19, 1},
          {23, 1},
          {29, 1},
          {31, 1}}},
    };
    return blocks;
}

struct SplitRow {
    std::uint64_t m;
    std::uint64_t p;
    int m1_count;       // elements of M1
    const char* s0;     // reciprocal sum of M0, truncated to 6 digits
    int max_groups;     // best threshold-group count, always < p here
};

// The terminal mod-p splits of the case analyses that end in bin-covering
// infeasibility (computed counts; the narration differs at a few spots).
inline constexpr SplitRow kSplits[] = {
    {8, 7, 8, "0.868056", 6},     {9, 7, 9, "0.754167", 5},
    {15, 11, 10, "0.908056", 9},  {18, 11, 13, "0.802361", 8},
    {22, 13, 14, "0.900471", 11}, {23, 13, 14, "0.863925", 10},
    {24, 13, 15, "0.872421", 10}, {25, 13, 15, "0.830754", 9},
    {44, 19, 19, "0.949794", 17}, {46, 19, 20, "0.918205", 15},
    {47, 19, 20, "0.922506", 15}, {48, 19, 21, "0.926690", 16},
    {49, 19, 21, "0.907898", 14}, {50, 19, 22, "0.889510", 14},
    {63, 23, 24, "0.912151", 16}, {64, 23, 24, "0.899410", 15},
};

struct DivisorSumRef {
    std::uint64_t m;
    const char* printed; // truncated to 7 digits
};

// Divisor reciprocal sums of the lcm profile over [m, 10m] for the m whose
// case analyses quote them.
inline constexpr DivisorSumRef kDivisorSums[] = {
    {6, "1.3761905"},  {7, "1.2396825"},  {8, "1.1232142"},  {9, "1.0212301"},
    {15, "1.0909921"}, {16, "1.0370689"}, {18, "1.0035335"}, {20, "1.1565610"},
    {21, "1.1161306"}, {22, "1.0776866"}, {23, "1.0411408"}, {24, "1.0539099"},
    {25, "1.0122433"}, {33, "1.0200675"}, {42, "1.0768676"}, {43, "1.0577420"},
    {44, "1.0623295"}, {45, "1.0485866"}, {46, "1.0329338"}, {47, "1.0372351"},
    {48, "1.0435245"}, {49, "1.0247320"}, {50, "1.0083683"},
};

// m-values of the 28 scripted case analyses (divisor sum >= 1).
inline constexpr std::uint64_t kCaseValues[] = {
    6,  7,  8,  9,  15, 16, 18, 20, 21, 22, 23, 24, 25, 33,
    42, 43, 44, 45, 46, 47, 48, 49, 50, 60, 61, 62, 63, 64,
};

// m-values covered by divisor-sum references (the narrated case list);
// {60, ..., 64} are scripted but have no quoted start value.
inline constexpr std::uint64_t kNarratedCaseValues[] = {
    6, 7, 8, 9, 15, 16, 18, 20, 21, 22, 23, 24, 25, 33, 42, 43, 44, 45, 46, 47, 48, 49, 50,
};

struct ReplacementStep {
    std::uint64_t m;
    std::uint64_t p;
    std::uint32_t a;
    std::uint32_t count;         // elements divisible by p^a
    std::uint64_t replacement;
};

// The scripted replacement steps with their exact outcomes.
inline constexpr ReplacementStep kReplacements[] = {
    {6, 7, 1, 7, 120},         {6, 2, 4, 2, 24},
    {7, 2, 4, 2, 24},          {16, 5, 2, 5, 60},
    {16, 11, 1, 11, 2520},     {20, 13, 1, 13, 27720},
    {21, 2, 6, 2, 96},         {42, 19, 1, 19, 12252240},
    {43, 19, 1, 19, 12252240}, {45, 19, 1, 19, 12252240},
    {60, 23, 1, 23, 1163962800},
    {61, 23, 1, 23, 1163962800},
    {62, 23, 1, 23, 1163962800},
};

struct ExactSum {
    std::uint64_t m;
    const char* num;
    const char* den;
};

// Exact final reciprocal sums of the no-split case analyses.
inline constexpr ExactSum kFinalSums[] = {
    {6, "39", "40"},
    {16, "2603", "3360"},
    {20, "1636903", "1663200"},
    {33, "3249751", "3706560"},
};

} // namespace fixtures
