#pragma once

// Test-only reference computations. None of these call into the library's
// analytic or Monte Carlo code; they recompute the same quantities by brute
// force or numerical integration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 2000) {
    if (b <= a) return 0.0;
    const double step = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * step) * (i % 2 ? 4.0 : 2.0);
    return sum * step / 3.0;
}

/// Expected per-district pools of both parties when the majority party's
/// district share s ~ Uniform[k - h, k + h], integrated directly.
struct ExpectedPools {
    double direct_a, direct_b, losing_a, losing_b, wasted_a, wasted_b;
    double win_probability;
    double mean_share_won, mean_share_lost, mean_margin_won, mean_margin_lost;
};

inline ExpectedPools integrate_uniform(double k, double h) {
    const double lo = k - h, hi = k + h, density = 1.0 / (2.0 * h);
    const double mid = std::clamp(0.5, lo, hi);
    auto over = [&](double a, double b, auto g) { return simpson([&](double s) { return g(s) * density; }, a, b); };
    ExpectedPools p{};
    p.direct_a = over(lo, hi, [](double s) { return s; });
    p.direct_b = over(lo, hi, [](double s) { return 1.0 - s; });
    p.losing_a = over(lo, mid, [](double s) { return s; });
    p.losing_b = over(mid, hi, [](double s) { return 1.0 - s; });
    p.wasted_a = over(mid, hi, [](double s) { return 2.0 * s - 1.0; });
    p.wasted_b = over(lo, mid, [](double s) { return 1.0 - 2.0 * s; });
    p.win_probability = over(mid, hi, [](double) { return 1.0; });
    const double p_lose = 1.0 - p.win_probability;
    p.mean_share_won = over(mid, hi, [](double s) { return s; }) / p.win_probability;
    p.mean_share_lost = p.losing_a / p_lose;
    p.mean_margin_won = p.wasted_a / p.win_probability;
    p.mean_margin_lost = p.wasted_b / p_lose;
    return p;
}

/// Expected list share of the majority party, formula 0 = DVT, 1 = PVT, 2 = NVT.
inline double quadrature_list_share(double k, double h, int formula) {
    const auto p = integrate_uniform(k, h);
    double a = p.direct_a, b = p.direct_b;
    if (formula >= 1) a += p.losing_a, b += p.losing_b;
    if (formula >= 2) a += p.wasted_a, b += p.wasted_b;
    return a / (a + b);
}

/// Seat shares (DVT, PVT, NVT) of the majority party for realised district shares,
/// written straight from the pool definitions.
inline std::array<double, 3> seat_shares_from_districts(const std::vector<double>& shares, double alpha) {
    double won = 0;
    std::array<double, 2> direct{}, losing{}, wasted{};
    for (double s : shares) {
        const std::array<double, 2> v{s, 1.0 - s};
        const int w = s >= 0.5 ? 0 : 1;
        won += (w == 0);
        for (int p = 0; p < 2; ++p) {
            direct[p] += v[p];
            if (p != w) losing[p] += v[p];
        }
        wasted[w] += v[w] - v[1 - w];
    }
    const double n = static_cast<double>(shares.size());
    std::array<double, 3> out{};
    for (int f = 0; f < 3; ++f) {
        std::array<double, 2> pool = direct;
        for (int p = 0; p < 2; ++p) {
            if (f >= 1) pool[p] += losing[p];
            if (f >= 2) pool[p] += wasted[p];
        }
        out[f] = alpha * won / n + (1.0 - alpha) * pool[0] / (pool[0] + pool[1]);
    }
    return out;
}

/// Exhaustive enumeration over an equally weighted midpoint grid of district shares:
/// the probability that each formula yields a seat majority.
inline std::array<double, 3> enumerate_majority_frequencies(int n_districts, double k, double h, double alpha,
                                                            int grid_points) {
    std::vector<double> grid(grid_points);
    for (int i = 0; i < grid_points; ++i) grid[i] = k - h + (i + 0.5) * (2.0 * h / grid_points);

    std::array<std::uint64_t, 3> wins{};
    std::uint64_t total = 0;
    std::vector<int> idx(n_districts, 0);
    std::vector<double> shares(n_districts);
    while (true) {
        for (int d = 0; d < n_districts; ++d) shares[d] = grid[idx[d]];
        const auto seats = seat_shares_from_districts(shares, alpha);
        for (int f = 0; f < 3; ++f) wins[f] += seats[f] > 0.5;
        ++total;
        int d = 0;
        while (d < n_districts && ++idx[d] == grid_points) idx[d++] = 0;
        if (d == n_districts) break;
    }
    return {double(wins[0]) / total, double(wins[1]) / total, double(wins[2]) / total};
}

}  // namespace oracle
