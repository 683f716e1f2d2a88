#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace votexfer {

/// How district votes feed the list tier.
///   DVT: raw votes only.
///   PVT: raw votes plus votes cast for candidates who lost their district.
///   NVT: PVT pool plus each district winner's margin over the runner-up.
enum class TransferFormula { DVT, PVT, NVT };

inline constexpr std::array<TransferFormula, 3> kAllFormulas{
    TransferFormula::DVT, TransferFormula::PVT, TransferFormula::NVT};

constexpr std::size_t formula_index(TransferFormula f) noexcept { return static_cast<std::size_t>(f); }

/// Lower-case key used in CLI flags, CSV and JSON ("dvt", "pvt", "nvt").
constexpr std::string_view formula_key(TransferFormula f) noexcept {
    switch (f) {
        case TransferFormula::DVT: return "dvt";
        case TransferFormula::PVT: return "pvt";
        case TransferFormula::NVT: return "nvt";
    }
    return "?";
}

constexpr std::string_view formula_label(TransferFormula f) noexcept {
    switch (f) {
        case TransferFormula::DVT: return "DVT";
        case TransferFormula::PVT: return "PVT";
        case TransferFormula::NVT: return "NVT";
    }
    return "?";
}

/// Accepts the key in either case.
std::optional<TransferFormula> parse_formula(std::string_view text);

}  // namespace votexfer
