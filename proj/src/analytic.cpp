#include "votexfer/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace votexfer::analytic {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_majority_share(double x) {
    if (!(x > 0.5 && x < 1.0)) {
        throw DomainError("majority vote share must lie in (0.5, 1), got " + describe(x));
    }
}

}  // namespace

double extreme_list_share(ExtremeScenario scenario, TransferFormula formula, double x) {
    require_majority_share(x);
    if (formula == TransferFormula::DVT) return x;

    if (scenario == ExtremeScenario::AllDistrictsWon) {
        // Losing pool: minority gets all of its 1 - x. Wasted: majority gets 2x - 1.
        if (formula == TransferFormula::PVT) return x / (2.0 - x);
        return (3.0 * x - 1.0) / (1.0 + x);
    }
    // Majority loses its districts by a vanishing margin, so the losing pool is
    // 1 - x for the majority and the minority wastes nothing.
    if (formula == TransferFormula::PVT) return 1.0 / (2.0 - x);
    return 2.0 * x / (1.0 + x);
}

std::array<TransferFormula, 3> extreme_preference_order(ExtremeScenario scenario) {
    using enum TransferFormula;
    if (scenario == ExtremeScenario::AllDistrictsWon) return {DVT, NVT, PVT};
    return {NVT, PVT, DVT};
}

UniformVoteModel::UniformVoteModel(double expected_share, double half_width)
    : k_(expected_share), h_(half_width) {
    if (!admissible(k_, h_)) {
        throw DomainError("uniform model needs h > 0, 0.5 < k < 0.5 + h, k - h >= 0, k + h <= 1; got k=" +
                          describe(k_) + " h=" + describe(h_));
    }
}

bool UniformVoteModel::admissible(double k, double h) noexcept {
    return h > 0.0 && k > 0.5 && k < 0.5 + h && k - h >= 0.0 && k + h <= 1.0;
}

Moments moments(const UniformVoteModel& model) {
    const double k = model.expected_share();
    const double h = model.half_width();
    return {
        .win_probability = 0.5 + (k - 0.5) / (2.0 * h),
        .mean_share_won = (0.5 + k + h) / 2.0,
        .mean_share_lost = (0.5 + k - h) / 2.0,
        .mean_margin_won = k + h - 0.5,
        .mean_margin_lost = 0.5 - k + h,
    };
}

double expected_list_share(const UniformVoteModel& model, TransferFormula formula) {
    const double k = model.expected_share();
    if (formula == TransferFormula::DVT) return k;

    const auto m = moments(model);
    const double p_win = m.win_probability;
    const double p_lose = 1.0 - p_win;
    // Expected pools per district; direct votes sum to 1 across both parties.
    const double majority_losing = p_lose * m.mean_share_lost;
    const double minority_losing = p_win * (1.0 - m.mean_share_won);
    double majority = k + majority_losing;
    double both = 1.0 + majority_losing + minority_losing;
    if (formula == TransferFormula::NVT) {
        majority += p_win * m.mean_margin_won;
        both += p_win * m.mean_margin_won + p_lose * m.mean_margin_lost;
    }
    return majority / both;
}

double expected_seat_share(const UniformVoteModel& model, TransferFormula formula, const TierWeights& weights) {
    const double alpha = weights.alpha();
    return alpha * moments(model).win_probability + (1.0 - alpha) * expected_list_share(model, formula);
}

std::array<TransferFormula, 3> expected_preference_order(const UniformVoteModel& model) {
    auto order = kAllFormulas;
    std::array<double, 3> value{};
    for (auto f : kAllFormulas) value[formula_index(f)] = expected_list_share(model, f);
    std::stable_sort(order.begin(), order.end(), [&](TransferFormula a, TransferFormula b) {
        return value[formula_index(a)] > value[formula_index(b)];
    });
    return order;
}

std::vector<CurvePoint> curve(TransferFormula formula, double half_width, std::span<const double> k_grid,
                              const std::optional<TierWeights>& weights) {
    std::vector<CurvePoint> out;
    out.reserve(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        if (!UniformVoteModel::admissible(k, half_width)) {
            throw DomainError("k=" + describe(k) + " (grid point " + std::to_string(i) +
                              ") is outside the admissible range for h=" + describe(half_width));
        }
        const UniformVoteModel model(k, half_width);
        const double value = weights ? expected_seat_share(model, formula, *weights)
                                     : expected_list_share(model, formula);
        out.push_back({k, value});
    }
    return out;
}

}  // namespace votexfer::analytic
