#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace votexfer {

/// Input outside the region where a formula or model is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed election input (JSON syntax, wrong value types).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the top vote count in a district is shared and the tie-break
/// policy forbids resolving it.
class TieError : public std::runtime_error {
public:
    explicit TieError(std::optional<std::size_t> district = std::nullopt)
        : std::runtime_error(district ? "tie for first place in district " + std::to_string(*district)
                                      : std::string("tie for first place in district")),
          district_(district) {}

    std::optional<std::size_t> district() const noexcept { return district_; }

private:
    std::optional<std::size_t> district_;
};

class ZeroTotalVotesError : public std::runtime_error {
public:
    ZeroTotalVotesError() : std::runtime_error("list vote pool is empty for every party") {}
};

}  // namespace votexfer
