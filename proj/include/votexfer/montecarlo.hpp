#pragma once

// Two-party Monte Carlo experiments. Each run draws independent district vote
// shares of the majority party from Uniform[k - h, k + h] and evaluates the
// seat share under all three transfer formulas at once.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "votexfer/analytic.hpp"
#include "votexfer/formula.hpp"

namespace votexfer::mc {

__extension__ using uint128 = unsigned __int128;

struct SimConfig {
    std::uint32_t n_districts = 100;
    std::uint32_t list_seats = 100;
    double k = 0.51;
    double h = 0.1;
    std::uint64_t runs = 100000;
    std::uint64_t seed = 1;

    /// n_districts / (n_districts + list_seats).
    double alpha() const;
    TierWeights weights() const;
    /// Throws DomainError on a degenerate config or an inadmissible (k, h).
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// District shares for one run; depends only on (config.k, config.h,
/// config.n_districts, config.seed, run_index).
std::vector<double> draw_districts(const SimConfig& config, std::uint64_t run_index);
/// Same values written into out, which must hold n_districts elements.
void draw_districts(const SimConfig& config, std::uint64_t run_index, std::span<double> out);

struct RunOutcome {
    double vote_share = 0.0;  ///< mean district share of the majority party
    std::array<double, 3> seat_share{};
    std::array<bool, 3> majority{};
    std::uint32_t districts_won = 0;
    std::uint32_t tied_districts = 0;  ///< shares exactly 0.5, awarded to the majority party

    double seat(TransferFormula f) const noexcept { return seat_share[formula_index(f)]; }
    bool has_majority(TransferFormula f) const noexcept { return majority[formula_index(f)]; }
};

/// Evaluates one realised election. A seat majority means strictly more than half.
RunOutcome run_once(std::span<const double> shares, const SimConfig& config);

/// Which formulas give the majority party a majority of seats in a run.
enum class MajorityCategory {
    AllThree,
    PvtNvtOnly,
    DvtNvtOnly,
    DvtPvtOnly,
    DvtOnly,
    PvtOnly,
    NvtOnly,
    Minority,
};

inline constexpr std::array<MajorityCategory, 8> kAllCategories{
    MajorityCategory::AllThree, MajorityCategory::PvtNvtOnly, MajorityCategory::DvtNvtOnly,
    MajorityCategory::DvtPvtOnly, MajorityCategory::DvtOnly,   MajorityCategory::PvtOnly,
    MajorityCategory::NvtOnly,  MajorityCategory::Minority};

constexpr std::size_t category_index(MajorityCategory c) noexcept { return static_cast<std::size_t>(c); }

/// JSON/CSV key, e.g. "pvt_nvt".
std::string_view category_key(MajorityCategory c) noexcept;

MajorityCategory classify(bool dvt, bool pvt, bool nvt) noexcept;
MajorityCategory classify(const RunOutcome& outcome) noexcept;
/// Inverse of classify: the (DVT, PVT, NVT) majority flags of a category.
std::array<bool, 3> category_flags(MajorityCategory c) noexcept;

struct RngMetadata {
    std::string generator;
    std::uint64_t seed = 0;

    friend bool operator==(const RngMetadata&, const RngMetadata&) = default;
};

struct Tally {
    SimConfig config;
    RngMetadata rng;
    std::uint64_t runs = 0;
    double mean_vote_share = 0.0;
    std::array<double, 3> mean_seat_share{};
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t tied_districts = 0;

    std::uint64_t count(MajorityCategory c) const noexcept { return counts[category_index(c)]; }
    double mean_seat(TransferFormula f) const noexcept { return mean_seat_share[formula_index(f)]; }
    /// Runs in which the formula gave a seat majority.
    std::uint64_t majority_count(TransferFormula f) const noexcept;

    friend bool operator==(const Tally&, const Tally&) = default;
};

/// Integer accumulator for run outcomes. Shares are summed in 2^-53 fixed point,
/// so merging is exact, associative and commutative.
class TallyAccumulator {
public:
    void add(const RunOutcome& outcome) noexcept;
    void merge(const TallyAccumulator& other) noexcept;
    Tally finish(const SimConfig& config) const;

    std::uint64_t runs() const noexcept { return runs_; }
    friend bool operator==(const TallyAccumulator&, const TallyAccumulator&) = default;

private:
    std::uint64_t runs_ = 0;
    uint128 vote_share_sum_ = 0;
    std::array<uint128, 3> seat_share_sum_{};
    std::array<std::uint64_t, 8> counts_{};
    std::uint64_t tied_districts_ = 0;
};

/// Runs indices [first, last) sequentially.
TallyAccumulator accumulate_runs(const SimConfig& config, std::uint64_t first, std::uint64_t last);

/// Aggregates runs 0..runs-1 on up to `threads` workers (0 = hardware
/// concurrency). The result does not depend on the worker count.
Tally simulate(const SimConfig& config, unsigned threads = 1);

/// Runs where the formula wins a majority and DVT does not, minus the reverse.
/// Throws std::invalid_argument for DVT.
std::int64_t net_advantage(const Tally& tally, TransferFormula formula);

/// Seed for sweep cell `index` under a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

struct SweepRow {
    SimConfig config;              ///< with the derived seed filled in
    std::optional<Tally> tally;    ///< empty when the cell failed
    std::string error;
};

/// One row per config in input order; a failing cell does not stop the others.
std::vector<SweepRow> sweep(std::span<const SimConfig> configs, std::uint64_t master_seed, unsigned threads = 1);

}  // namespace votexfer::mc
