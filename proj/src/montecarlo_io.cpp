#include "votexfer/montecarlo_io.hpp"

#include <ostream>

#include "votexfer/errors.hpp"
#include "votexfer/format.hpp"

namespace votexfer::mc {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json tally_to_json(const Tally& tally) {
    ordered_json doc;
    const auto& c = tally.config;
    doc["config"] = {
        {"n_districts", c.n_districts}, {"list_seats", c.list_seats}, {"alpha", c.alpha()},
        {"k", c.k},  {"h", c.h},  {"runs", c.runs},  {"seed", c.seed},
    };
    doc["rng_metadata"] = {{"generator", tally.rng.generator}, {"seed", tally.rng.seed}};
    doc["runs"] = tally.runs;
    doc["mean_vote_share"] = tally.mean_vote_share;
    ordered_json seats;
    for (auto f : kAllFormulas) seats[std::string(formula_key(f))] = tally.mean_seat(f);
    doc["mean_seat_share"] = seats;
    ordered_json counts;
    for (auto cat : kAllCategories) counts[std::string(category_key(cat))] = tally.count(cat);
    doc["counts"] = counts;
    doc["tied_districts"] = tally.tied_districts;
    return doc;
}

Tally tally_from_json(const json& doc) {
    try {
        Tally t;
        const auto& c = doc.at("config");
        t.config.n_districts = c.at("n_districts").get<std::uint32_t>();
        t.config.list_seats = c.at("list_seats").get<std::uint32_t>();
        t.config.k = c.at("k").get<double>();
        t.config.h = c.at("h").get<double>();
        t.config.runs = c.at("runs").get<std::uint64_t>();
        t.config.seed = c.at("seed").get<std::uint64_t>();
        t.rng.generator = doc.at("rng_metadata").at("generator").get<std::string>();
        t.rng.seed = doc.at("rng_metadata").at("seed").get<std::uint64_t>();
        t.runs = doc.at("runs").get<std::uint64_t>();
        t.mean_vote_share = doc.at("mean_vote_share").get<double>();
        for (auto f : kAllFormulas) {
            t.mean_seat_share[formula_index(f)] = doc.at("mean_seat_share").at(std::string(formula_key(f))).get<double>();
        }
        for (auto cat : kAllCategories) {
            t.counts[category_index(cat)] = doc.at("counts").at(std::string(category_key(cat))).get<std::uint64_t>();
        }
        t.tied_districts = doc.value("tied_districts", std::uint64_t{0});
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed tally JSON: ") + e.what());
    }
}

std::string tally_json_string(const Tally& tally) { return tally_to_json(tally).dump(2) + "\n"; }

std::string sweep_csv_header(bool with_net_advantage) {
    std::string h = "k,h,m,alpha,runs,seed,mean_vote_share,mean_seat_share_dvt,mean_seat_share_pvt,mean_seat_share_nvt";
    for (auto cat : kAllCategories) (h += ',') += category_key(cat);
    if (with_net_advantage) h += ",net_advantage_pvt,net_advantage_nvt";
    return h;
}

std::string sweep_csv_line(const Tally& tally, bool with_net_advantage) {
    const auto& c = tally.config;
    std::string line = format_double(c.k) + ',' + format_double(c.h) + ',' + std::to_string(c.list_seats) + ',' +
                       format_double(c.alpha()) + ',' + std::to_string(tally.runs) + ',' + std::to_string(c.seed) +
                       ',' + format_double(tally.mean_vote_share);
    for (auto f : kAllFormulas) line += ',' + format_double(tally.mean_seat(f));
    for (auto cat : kAllCategories) line += ',' + std::to_string(tally.count(cat));
    if (with_net_advantage) {
        line += ',' + std::to_string(net_advantage(tally, TransferFormula::PVT));
        line += ',' + std::to_string(net_advantage(tally, TransferFormula::NVT));
    }
    return line;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool with_net_advantage) {
    out << sweep_csv_header(with_net_advantage) << '\n';
    for (const auto& row : rows) {
        if (row.tally) out << sweep_csv_line(*row.tally, with_net_advantage) << '\n';
    }
}

}  // namespace votexfer::mc
