#pragma once

// Closed-form results for a two-party contest. All shares are those of the
// majority party, expressed as fractions in [0, 1].

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "votexfer/election.hpp"
#include "votexfer/formula.hpp"

namespace votexfer::analytic {

enum class ExtremeScenario {
    AllDistrictsWon,   ///< the majority party carries every district
    MaxDistrictsLost,  ///< it narrowly loses a 2(1 - x) fraction of districts
};

/// List share under a fixed national vote share x in (0.5, 1).
/// Throws DomainError outside that interval.
double extreme_list_share(ExtremeScenario scenario, TransferFormula formula, double vote_share);

/// Formulas from most to least favourable for the majority party.
std::array<TransferFormula, 3> extreme_preference_order(ExtremeScenario scenario);

/// District vote share of the majority party ~ Uniform[k - h, k + h], with
/// 0.5 < k < 0.5 + h, k - h >= 0 and k + h <= 1.
class UniformVoteModel {
public:
    /// Throws DomainError when the parameters fall outside the strip above.
    UniformVoteModel(double expected_share, double half_width);

    static bool admissible(double expected_share, double half_width) noexcept;

    double expected_share() const noexcept { return k_; }
    double half_width() const noexcept { return h_; }

private:
    double k_;
    double h_;
};

/// Per-district expectations under the uniform model.
struct Moments {
    double win_probability;    ///< P(share > 0.5)
    double mean_share_won;     ///< E[share | won]
    double mean_share_lost;    ///< E[share | lost]
    double mean_margin_won;    ///< E[2 share - 1 | won]
    double mean_margin_lost;   ///< E[1 - 2 share | lost]
};

Moments moments(const UniformVoteModel& model);

/// Expected list share: ratio of the expected pools of the two parties.
double expected_list_share(const UniformVoteModel& model, TransferFormula formula);

/// alpha * win_probability + (1 - alpha) * expected_list_share.
double expected_seat_share(const UniformVoteModel& model, TransferFormula formula, const TierWeights& weights);

/// Formulas sorted by expected list share, highest first.
std::array<TransferFormula, 3> expected_preference_order(const UniformVoteModel& model);

struct CurvePoint {
    double k;
    double value;
};

/// Expected list share (no weights) or expected seat share (with weights) for
/// every k in the grid, in grid order. Throws DomainError naming the first
/// inadmissible k.
std::vector<CurvePoint> curve(TransferFormula formula, double half_width, std::span<const double> k_grid,
                              const std::optional<TierWeights>& weights = std::nullopt);

}  // namespace votexfer::analytic
