// Golden per-seed outcomes for the q=6 attack benchmark.  The table is
// pilot-calibrated: regenerate it by running
//
//     zelab_acceptance --emit-golden-8e > tests/acceptance/golden_attack.hpp
//
// and rebuilding.  An empty table makes the benchmark criterion fail, so a
// stale or missing calibration is loud, never silent.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace zelab_acceptance {

struct GoldenRun {
    std::uint64_t seed;
    bool found;
    std::array<std::uint64_t, 5> draws;    // per-round fresh rows drawn
    std::array<std::uint32_t, 5> sizes;    // per-round member size
    std::vector<std::uint32_t> rows;       // extracted list (empty if !found)
};

inline const std::vector<GoldenRun>& golden_benchmark_runs() {
    static const std::vector<GoldenRun> runs = {
        {1, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {19, 103, 535, 698, 2717, 3564, 3658}},
        {2, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {417, 679, 835, 881, 1152, 1356, 1728}},
        {3, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {776, 1621, 2020, 2574, 2876, 3281, 3410}},
        {4, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {367, 1174, 1358, 1949, 2709, 3776, 4093}},
        {5, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {1098, 1529, 2247, 2413, 2989, 3864, 3870}},
        {6, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {249, 955, 1538, 1882, 2114, 2939, 3681}},
        {7, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {236, 1558, 2199, 2395, 2779, 2954, 3113}},
        {8, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {195, 567, 617, 1955, 2260, 2895, 3013}},
        {9, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {328, 1087, 1427, 2487, 3197, 3244, 3358}},
        {10, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {881, 1529, 2312, 2316, 3268, 3857, 3869}},
        {11, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {180, 2004, 2266, 2276, 2414, 3148, 3271}},
        {12, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {128, 579, 1299, 1670, 1748, 1830, 2074}},
        {13, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {375, 709, 1617, 1784, 1867, 2992, 3891}},
        {14, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {1175, 1620, 1895, 3186, 3239, 3377, 3609}},
        {15, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {91, 470, 745, 1992, 2138, 3012, 3185}},
        {16, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {90, 1394, 1851, 2774, 3186, 3198, 3609}},
        {17, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {121, 2383, 2718, 2736, 2936, 3080, 3370}},
        {18, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {84, 252, 1338, 1623, 1700, 2980, 3237}},
        {19, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {1236, 1512, 1595, 1666, 2366, 2701, 3287}},
        {20, true, {4, 0, 2, 0, 1}, {4, 4, 6, 6, 7}, {200, 1097, 1233, 1764, 2043, 3239, 3539}},
    };
    return runs;
}

} // namespace zelab_acceptance
