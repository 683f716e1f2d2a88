#include "votexfer/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "votexfer/rng.hpp"

namespace votexfer::mc {

namespace {

constexpr double kFixedPointScale = 0x1.0p53;

std::uint64_t to_fixed(double share) noexcept {
    return static_cast<std::uint64_t>(std::llround(std::clamp(share, 0.0, 1.0) * kFixedPointScale));
}

double fixed_mean(uint128 sum, std::uint64_t runs) noexcept {
    if (runs == 0) return 0.0;
    return static_cast<double>(sum) / kFixedPointScale / static_cast<double>(runs);
}

}  // namespace

double SimConfig::alpha() const { return weights().alpha(); }

TierWeights SimConfig::weights() const { return TierWeights::from_seats(n_districts, list_seats); }

void SimConfig::validate() const {
    if (n_districts == 0) throw DomainError("n_districts must be positive");
    if (runs == 0) throw DomainError("runs must be positive");
    analytic::UniformVoteModel(k, h);
}

void draw_districts(const SimConfig& config, std::uint64_t run_index, std::span<double> out) {
    if (out.size() != config.n_districts) throw std::invalid_argument("output span must hold n_districts values");
    const rng::Substream stream(config.seed, run_index);
    stream.fill_uniform(out.begin(), out.size());
    const double lo = config.k - config.h;
    const double width = 2.0 * config.h;
    for (auto& v : out) v = std::min(lo + width * v, config.k + config.h);
}

std::vector<double> draw_districts(const SimConfig& config, std::uint64_t run_index) {
    config.validate();
    std::vector<double> out(config.n_districts);
    draw_districts(config, run_index, out);
    return out;
}

RunOutcome run_once(std::span<const double> shares, const SimConfig& config) {
    if (shares.size() != config.n_districts) throw std::invalid_argument("shares length must equal n_districts");

    // Pools of the majority (a) and minority (b) party, summed over districts.
    double direct_a = 0.0, direct_b = 0.0;
    double losing_a = 0.0, losing_b = 0.0;
    double wasted_a = 0.0, wasted_b = 0.0;
    RunOutcome out;
    for (const double s : shares) {
        if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("district share outside [0, 1]");
        const double other = 1.0 - s;
        direct_a += s;
        direct_b += other;
        if (s >= 0.5) {
            ++out.districts_won;
            if (s == 0.5) ++out.tied_districts;
            losing_b += other;
            wasted_a += s - other;
        } else {
            losing_a += s;
            wasted_b += other - s;
        }
    }

    const double n = static_cast<double>(shares.size());
    const double alpha = config.alpha();
    const double ssd_share = static_cast<double>(out.districts_won) / n;
    const std::array<double, 3> list_share{
        direct_a / (direct_a + direct_b),
        (direct_a + losing_a) / (direct_a + direct_b + losing_a + losing_b),
        (direct_a + losing_a + wasted_a) / (direct_a + direct_b + losing_a + losing_b + wasted_a + wasted_b),
    };
    out.vote_share = direct_a / n;
    for (auto f : kAllFormulas) {
        const auto i = formula_index(f);
        out.seat_share[i] = alpha * ssd_share + (1.0 - alpha) * list_share[i];
        out.majority[i] = out.seat_share[i] > 0.5;
    }
    return out;
}

std::string_view category_key(MajorityCategory c) noexcept {
    switch (c) {
        case MajorityCategory::AllThree: return "all_three";
        case MajorityCategory::PvtNvtOnly: return "pvt_nvt";
        case MajorityCategory::DvtNvtOnly: return "dvt_nvt";
        case MajorityCategory::DvtPvtOnly: return "dvt_pvt";
        case MajorityCategory::DvtOnly: return "dvt_only";
        case MajorityCategory::PvtOnly: return "pvt_only";
        case MajorityCategory::NvtOnly: return "nvt_only";
        case MajorityCategory::Minority: return "minority";
    }
    return "?";
}

MajorityCategory classify(bool dvt, bool pvt, bool nvt) noexcept {
    using enum MajorityCategory;
    if (dvt && pvt && nvt) return AllThree;
    if (pvt && nvt) return PvtNvtOnly;
    if (dvt && nvt) return DvtNvtOnly;
    if (dvt && pvt) return DvtPvtOnly;
    if (dvt) return DvtOnly;
    if (pvt) return PvtOnly;
    if (nvt) return NvtOnly;
    return Minority;
}

std::array<bool, 3> category_flags(MajorityCategory c) noexcept {
    using enum MajorityCategory;
    switch (c) {
        case AllThree: return {true, true, true};
        case PvtNvtOnly: return {false, true, true};
        case DvtNvtOnly: return {true, false, true};
        case DvtPvtOnly: return {true, true, false};
        case DvtOnly: return {true, false, false};
        case PvtOnly: return {false, true, false};
        case NvtOnly: return {false, false, true};
        case Minority: break;
    }
    return {false, false, false};
}

MajorityCategory classify(const RunOutcome& outcome) noexcept {
    return classify(outcome.has_majority(TransferFormula::DVT), outcome.has_majority(TransferFormula::PVT),
                    outcome.has_majority(TransferFormula::NVT));
}

std::uint64_t Tally::majority_count(TransferFormula f) const noexcept {
    std::uint64_t total = 0;
    for (auto c : kAllCategories) {
        if (category_flags(c)[formula_index(f)]) total += counts[category_index(c)];
    }
    return total;
}

void TallyAccumulator::add(const RunOutcome& outcome) noexcept {
    ++runs_;
    vote_share_sum_ += to_fixed(outcome.vote_share);
    for (std::size_t i = 0; i < 3; ++i) seat_share_sum_[i] += to_fixed(outcome.seat_share[i]);
    ++counts_[category_index(classify(outcome))];
    tied_districts_ += outcome.tied_districts;
}

void TallyAccumulator::merge(const TallyAccumulator& other) noexcept {
    runs_ += other.runs_;
    vote_share_sum_ += other.vote_share_sum_;
    for (std::size_t i = 0; i < 3; ++i) seat_share_sum_[i] += other.seat_share_sum_[i];
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    tied_districts_ += other.tied_districts_;
}

Tally TallyAccumulator::finish(const SimConfig& config) const {
    Tally t;
    t.config = config;
    t.rng = {std::string(rng::kGeneratorName), config.seed};
    t.runs = runs_;
    t.mean_vote_share = fixed_mean(vote_share_sum_, runs_);
    for (std::size_t i = 0; i < 3; ++i) t.mean_seat_share[i] = fixed_mean(seat_share_sum_[i], runs_);
    t.counts = counts_;
    t.tied_districts = tied_districts_;
    return t;
}

TallyAccumulator accumulate_runs(const SimConfig& config, std::uint64_t first, std::uint64_t last) {
    TallyAccumulator acc;
    std::vector<double> shares(config.n_districts);
    for (std::uint64_t r = first; r < last; ++r) {
        draw_districts(config, r, shares);
        acc.add(run_once(shares, config));
    }
    return acc;
}

Tally simulate(const SimConfig& config, unsigned threads) {
    config.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.runs));

    std::vector<TallyAccumulator> parts(workers);
    if (workers == 1) {
        parts[0] = accumulate_runs(config, 0, config.runs);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const auto first = static_cast<std::uint64_t>(uint128{config.runs} * w / workers);
            const auto last = static_cast<std::uint64_t>(uint128{config.runs} * (w + 1) / workers);
            pool.emplace_back([&, w, first, last] { parts[w] = accumulate_runs(config, first, last); });
        }
    }

    TallyAccumulator total;
    for (const auto& p : parts) total.merge(p);
    return total.finish(config);
}

std::int64_t net_advantage(const Tally& tally, TransferFormula formula) {
    using enum MajorityCategory;
    const auto c = [&](MajorityCategory cat) { return static_cast<std::int64_t>(tally.count(cat)); };
    switch (formula) {
        case TransferFormula::PVT: return (c(PvtNvtOnly) + c(PvtOnly)) - (c(DvtNvtOnly) + c(DvtOnly));
        case TransferFormula::NVT: return (c(PvtNvtOnly) + c(NvtOnly)) - (c(DvtPvtOnly) + c(DvtOnly));
        case TransferFormula::DVT: break;
    }
    throw std::invalid_argument("net advantage is measured against DVT; pass PVT or NVT");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return rng::mix64(rng::mix64(master_seed) ^ rng::mix64(~index));
}

std::vector<SweepRow> sweep(std::span<const SimConfig> configs, std::uint64_t master_seed, unsigned threads) {
    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        SweepRow row;
        row.config = configs[i];
        row.config.seed = derive_seed(master_seed, i);
        try {
            row.tally = simulate(row.config, threads);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace votexfer::mc
