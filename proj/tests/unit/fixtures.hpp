// Generated by tests/oracles/compute_fixtures.py. Do not edit.
#pragma once

namespace fixtures {

inline constexpr double schwefel_at_420_9687 = 2.7139341381388586e-10;
inline constexpr double schwefel_at_minus_420_9687 = 837.9657745445965;
inline constexpr double schwefel_minimizer_1d = 420.96874635998205;
inline constexpr double schwefel_minimum_1d = 1.937252135648044e-13;
inline constexpr double griewank_0_600 = 91.98891104203662;
inline constexpr double griewank_pi = 2.0024674011002723;
inline constexpr double branin_pi_2_275 = 0.3978873577297383;
inline constexpr double branin_minus_pi_12_275 = 0.3978873577297383;
inline constexpr double branin_0_0 = 55.602112642270264;
inline constexpr double branin_minimum = 0.3978873577297383;
inline constexpr double himmelblau_at_published = 1.0989296656869089e-11;
inline constexpr double himmelblau_refined[2] = {-2.8051180869527443, 3.1313125182505726};
inline constexpr double himmelblau_minimizers[4][2] = {{3.0, 2.0}, {-2.805118086952745, 3.131312518250573}, {-3.779310253377747, -3.283185991286169}, {3.5844283403304917, -1.8481265269644034}};
inline constexpr double knapsack12_values[12] = {65, 32, 97, 95, 15, 27, 27, 26, 62, 41, 53, 30};
inline constexpr double knapsack12_weights[12] = {47, 35, 34, 10, 12, 45, 19, 43, 40, 5, 26, 29};
inline constexpr double knapsack12_capacity = 172;
inline constexpr double knapsack12_optimum = 413.0;
inline constexpr double knapsack4_values[4] = {7, 3, 9, 4};
inline constexpr double knapsack4_weights[4] = {5, 2, 6, 3};
inline constexpr double knapsack4_capacity = 9;
inline constexpr double knapsack4_optimum = 13.0;
inline constexpr double random_search_median_rastrigin4_10000 = 8.258983688746154;
inline constexpr double random_search_median_rastrigin5_20000 = 13.317793066085923;

}  // namespace fixtures
