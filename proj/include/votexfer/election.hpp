#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "votexfer/errors.hpp"
#include "votexfer/formula.hpp"

namespace votexfer {

struct Party {
    std::size_t index = 0;
    std::string name;

    friend bool operator==(const Party&, const Party&) = default;
};

/// Votes cast in one single-seat district, one entry per roster party.
struct DistrictTally {
    std::vector<std::int64_t> votes;

    std::int64_t total() const noexcept;
    friend bool operator==(const DistrictTally&, const DistrictTally&) = default;
};

struct Election {
    std::vector<Party> parties;
    std::vector<DistrictTally> districts;

    /// Builds a roster with consecutive indices from the given names.
    static Election from_rows(const std::vector<std::string>& party_names,
                              std::vector<std::vector<std::int64_t>> district_votes);

    friend bool operator==(const Election&, const Election&) = default;
};

enum class TieBreakPolicy {
    Reject,           ///< a shared top vote count raises TieError
    LowestIndexWins,  ///< the tied party with the lowest roster index wins
};

enum class ViolationKind {
    EmptyElection,      ///< no districts
    TooFewParties,      ///< fewer than two roster parties
    BadPartyIndex,      ///< roster indices are not 0, 1, 2, ...
    DuplicatePartyName,
    RaggedDistrict,     ///< district row length differs from roster size
    NegativeVotes,
    AllZeroDistrict,
};

struct Violation {
    ViolationKind kind;
    std::size_t index = 0;  ///< district or party index the violation refers to

    std::string message() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

/// Collects every violation instead of stopping at the first one.
ValidationReport check_election(const Election& election);

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// An election that has passed check_election. Only validate_election creates one.
class ValidatedElection {
public:
    const Election& election() const noexcept { return election_; }
    const std::vector<Party>& parties() const noexcept { return election_.parties; }
    const std::vector<DistrictTally>& districts() const noexcept { return election_.districts; }
    std::size_t party_count() const noexcept { return election_.parties.size(); }
    std::size_t district_count() const noexcept { return election_.districts.size(); }
    /// Non-fatal findings, e.g. districts of unequal size.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    friend ValidatedElection validate_election(Election election);
    ValidatedElection(Election election, std::vector<std::string> warnings)
        : election_(std::move(election)), warnings_(std::move(warnings)) {}

    Election election_;
    std::vector<std::string> warnings_;
};

/// Throws ValidationError listing all violations.
ValidatedElection validate_election(Election election);

struct DistrictOutcome {
    std::size_t winner = 0;
    std::size_t runner_up = 0;
    std::int64_t margin = 0;  ///< votes[winner] - votes[runner_up]
    bool tie_broken = false;  ///< the top count was shared and the policy picked the winner

    friend bool operator==(const DistrictOutcome&, const DistrictOutcome&) = default;
};

/// Plurality winner and runner-up. Ties among runners-up go to the lowest index;
/// the margin does not depend on which of them is chosen.
/// Requires at least two parties and a non-empty tally.
DistrictOutcome district_outcome(const DistrictTally& tally, TieBreakPolicy policy);

/// List-tier vote pools of one party. Components not used by the formula are zero.
struct VotePools {
    std::int64_t direct = 0;
    std::int64_t losing = 0;  ///< votes in districts the party did not win
    std::int64_t wasted = 0;  ///< margins over the runner-up in districts the party won
    std::int64_t total = 0;

    friend bool operator==(const VotePools&, const VotePools&) = default;
};

struct ListVoteBreakdown {
    TransferFormula formula = TransferFormula::DVT;
    std::vector<VotePools> parties;
};

ListVoteBreakdown list_vote_breakdown(const ValidatedElection& election, TransferFormula formula,
                                      TieBreakPolicy policy);

/// total(p) / sum of totals. Throws ZeroTotalVotesError when every total is zero.
std::vector<double> list_vote_shares(const ListVoteBreakdown& breakdown);

/// Share of all mandates that are filled in single-seat districts.
class TierWeights {
public:
    /// Throws DomainError unless 0 <= alpha <= 1.
    static TierWeights from_alpha(double alpha);
    /// alpha = districts / (districts + list_seats), one correctly rounded division.
    static TierWeights from_seats(std::uint64_t districts, std::uint64_t list_seats);

    double alpha() const noexcept { return alpha_; }
    std::optional<std::uint64_t> districts() const noexcept { return districts_; }
    std::optional<std::uint64_t> list_seats() const noexcept { return list_seats_; }

private:
    TierWeights() = default;

    double alpha_ = 1.0;
    std::optional<std::uint64_t> districts_;
    std::optional<std::uint64_t> list_seats_;
};

struct PartySeatShares {
    double ssd_share = 0.0;   ///< districts won / number of districts
    double list_share = 0.0;
    double combined = 0.0;    ///< alpha * ssd_share + (1 - alpha) * list_share
};

struct SeatShares {
    TransferFormula formula = TransferFormula::DVT;
    double alpha = 1.0;
    std::vector<PartySeatShares> parties;
};

/// Fractional seat shares; no integer apportionment is performed.
SeatShares seat_shares(const ValidatedElection& election, TransferFormula formula, const TierWeights& weights,
                       TieBreakPolicy policy);

/// Parses {"parties": [names...], "districts": [[v0, v1, ...], ...]}.
/// Throws ParseError on malformed JSON or non-integer votes; structural problems
/// (ragged rows, empty lists) are left to validate_election.
Election parse_election_json(std::string_view text);
Election load_election(const std::string& path);

}  // namespace votexfer
