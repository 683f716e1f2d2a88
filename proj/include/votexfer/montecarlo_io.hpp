#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "votexfer/montecarlo.hpp"

namespace votexfer::mc {

nlohmann::ordered_json tally_to_json(const Tally& tally);
/// Throws ParseError when a field is missing or has the wrong type.
Tally tally_from_json(const nlohmann::json& doc);

/// Pretty-printed JSON followed by a newline.
std::string tally_json_string(const Tally& tally);

/// Column names of the sweep CSV, in output order.
std::string sweep_csv_header(bool with_net_advantage);
/// Data line for one tally (no trailing newline).
std::string sweep_csv_line(const Tally& tally, bool with_net_advantage);

/// Header plus one line per successful row. Failed rows are skipped.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool with_net_advantage);

}  // namespace votexfer::mc
