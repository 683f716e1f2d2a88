#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "votexfer/election.hpp"

namespace votexfer {

using nlohmann::json;

Election parse_election_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("election file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("election file must contain a JSON object");
    if (!doc.contains("parties") || !doc["parties"].is_array()) {
        throw ParseError("field \"parties\" must be an array of names");
    }
    if (!doc.contains("districts") || !doc["districts"].is_array()) {
        throw ParseError("field \"districts\" must be an array of vote rows");
    }

    std::vector<std::string> names;
    for (const auto& name : doc["parties"]) {
        if (!name.is_string()) throw ParseError("party names must be strings");
        names.push_back(name.get<std::string>());
    }

    std::vector<std::vector<std::int64_t>> rows;
    std::size_t d = 0;
    for (const auto& row : doc["districts"]) {
        if (!row.is_array()) throw ParseError("district " + std::to_string(d) + " is not an array");
        auto& out = rows.emplace_back();
        for (const auto& v : row) {
            if (!v.is_number_integer()) {
                throw ParseError("district " + std::to_string(d) + " has a non-integer vote count");
            }
            if (v.is_number_unsigned() &&
                v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                throw ParseError("district " + std::to_string(d) + " has an out-of-range vote count");
            }
            out.push_back(v.get<std::int64_t>());
        }
        ++d;
    }
    return Election::from_rows(names, std::move(rows));
}

Election load_election(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open election file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_election_json(buf.str());
}

}  // namespace votexfer
