#include "votexfer/election.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace votexfer {

std::optional<TransferFormula> parse_formula(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto f : kAllFormulas) {
        if (lower == formula_key(f)) return f;
    }
    return std::nullopt;
}

std::int64_t DistrictTally::total() const noexcept {
    return std::accumulate(votes.begin(), votes.end(), std::int64_t{0});
}

Election Election::from_rows(const std::vector<std::string>& party_names,
                             std::vector<std::vector<std::int64_t>> district_votes) {
    Election e;
    e.parties.reserve(party_names.size());
    for (std::size_t i = 0; i < party_names.size(); ++i) e.parties.push_back({i, party_names[i]});
    e.districts.reserve(district_votes.size());
    for (auto& row : district_votes) e.districts.push_back({std::move(row)});
    return e;
}

std::string Violation::message() const {
    const auto idx = std::to_string(index);
    switch (kind) {
        case ViolationKind::EmptyElection: return "EmptyElection: the election has no districts";
        case ViolationKind::TooFewParties: return "TooFewParties: the roster needs at least two parties";
        case ViolationKind::BadPartyIndex: return "BadPartyIndex: party " + idx + " is out of sequence";
        case ViolationKind::DuplicatePartyName: return "DuplicatePartyName: party " + idx + " repeats a name";
        case ViolationKind::RaggedDistrict:
            return "RaggedDistrict(" + idx + "): vote row length differs from the roster size";
        case ViolationKind::NegativeVotes: return "NegativeVotes(" + idx + "): district has a negative count";
        case ViolationKind::AllZeroDistrict: return "AllZeroDistrict(" + idx + "): district has no votes";
    }
    return "unknown violation";
}

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
    std::string out = "invalid election";
    for (const auto& v : violations) out += "\n  " + v.message();
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations)) {}

ValidationReport check_election(const Election& election) {
    ValidationReport report;
    auto& out = report.violations;
    const auto n_parties = election.parties.size();

    if (election.districts.empty()) out.push_back({ViolationKind::EmptyElection, 0});
    if (n_parties < 2) out.push_back({ViolationKind::TooFewParties, n_parties});

    std::set<std::string> names;
    for (std::size_t i = 0; i < n_parties; ++i) {
        if (election.parties[i].index != i) out.push_back({ViolationKind::BadPartyIndex, i});
        if (!names.insert(election.parties[i].name).second) out.push_back({ViolationKind::DuplicatePartyName, i});
    }

    std::optional<std::int64_t> common_size;
    bool unequal = false;
    for (std::size_t d = 0; d < election.districts.size(); ++d) {
        const auto& votes = election.districts[d].votes;
        if (votes.size() != n_parties) {
            out.push_back({ViolationKind::RaggedDistrict, d});
            continue;
        }
        if (std::any_of(votes.begin(), votes.end(), [](std::int64_t v) { return v < 0; })) {
            out.push_back({ViolationKind::NegativeVotes, d});
            continue;
        }
        const auto total = election.districts[d].total();
        if (total == 0) {
            out.push_back({ViolationKind::AllZeroDistrict, d});
            continue;
        }
        if (!common_size) common_size = total;
        else if (*common_size != total) unequal = true;
    }
    if (unequal) {
        report.warnings.emplace_back(
            "districts have unequal numbers of votes; the two-party analytic results assume equal sizes");
    }
    return report;
}

ValidatedElection validate_election(Election election) {
    auto report = check_election(election);
    if (!report.ok()) throw ValidationError(std::move(report.violations));
    return ValidatedElection(std::move(election), std::move(report.warnings));
}

DistrictOutcome district_outcome(const DistrictTally& tally, TieBreakPolicy policy) {
    const auto& v = tally.votes;
    if (v.size() < 2) throw std::invalid_argument("district_outcome needs at least two parties");

    std::size_t winner = 0;
    for (std::size_t p = 1; p < v.size(); ++p) {
        if (v[p] > v[winner]) winner = p;
    }
    std::optional<std::size_t> runner_up;
    for (std::size_t p = 0; p < v.size(); ++p) {
        if (p == winner) continue;
        if (!runner_up || v[p] > v[*runner_up]) runner_up = p;
    }

    const bool tied = v[*runner_up] == v[winner];
    if (tied && policy == TieBreakPolicy::Reject) throw TieError();
    return {winner, *runner_up, v[winner] - v[*runner_up], tied};
}

ListVoteBreakdown list_vote_breakdown(const ValidatedElection& election, TransferFormula formula,
                                      TieBreakPolicy policy) {
    ListVoteBreakdown out;
    out.formula = formula;
    out.parties.assign(election.party_count(), VotePools{});

    const auto& districts = election.districts();
    for (std::size_t d = 0; d < districts.size(); ++d) {
        DistrictOutcome result;
        try {
            result = district_outcome(districts[d], policy);
        } catch (const TieError&) {
            throw TieError(d);
        }
        const auto& votes = districts[d].votes;
        for (std::size_t p = 0; p < votes.size(); ++p) {
            out.parties[p].direct += votes[p];
            if (p != result.winner) out.parties[p].losing += votes[p];
        }
        out.parties[result.winner].wasted += result.margin;
    }

    for (auto& pools : out.parties) {
        if (formula == TransferFormula::DVT) pools.losing = 0;
        if (formula != TransferFormula::NVT) pools.wasted = 0;
        pools.total = pools.direct + pools.losing + pools.wasted;
    }
    return out;
}

std::vector<double> list_vote_shares(const ListVoteBreakdown& breakdown) {
    std::int64_t sum = 0;
    for (const auto& p : breakdown.parties) sum += p.total;
    if (sum <= 0) throw ZeroTotalVotesError();

    std::vector<double> shares;
    shares.reserve(breakdown.parties.size());
    for (const auto& p : breakdown.parties) {
        shares.push_back(static_cast<double>(p.total) / static_cast<double>(sum));
    }
    return shares;
}

TierWeights TierWeights::from_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    TierWeights w;
    w.alpha_ = alpha;
    return w;
}

TierWeights TierWeights::from_seats(std::uint64_t districts, std::uint64_t list_seats) {
    if (districts == 0) throw DomainError("number of districts must be positive");
    constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
    if (districts >= kExact || list_seats >= kExact - districts) {
        throw DomainError("seat counts too large to convert exactly");
    }
    TierWeights w;
    w.alpha_ = static_cast<double>(districts) / static_cast<double>(districts + list_seats);
    w.districts_ = districts;
    w.list_seats_ = list_seats;
    return w;
}

SeatShares seat_shares(const ValidatedElection& election, TransferFormula formula, const TierWeights& weights,
                       TieBreakPolicy policy) {
    const auto breakdown = list_vote_breakdown(election, formula, policy);
    const auto list = list_vote_shares(breakdown);

    std::vector<std::size_t> won(election.party_count(), 0);
    for (const auto& d : election.districts()) ++won[district_outcome(d, policy).winner];

    const double alpha = weights.alpha();
    const auto n = static_cast<double>(election.district_count());
    SeatShares out;
    out.formula = formula;
    out.alpha = alpha;
    out.parties.reserve(election.party_count());
    for (std::size_t p = 0; p < election.party_count(); ++p) {
        const double ssd = static_cast<double>(won[p]) / n;
        out.parties.push_back({ssd, list[p], alpha * ssd + (1.0 - alpha) * list[p]});
    }
    return out;
}

}  // namespace votexfer
