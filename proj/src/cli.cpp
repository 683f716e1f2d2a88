#include "votexfer/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "votexfer/analytic.hpp"
#include "votexfer/election.hpp"
#include "votexfer/format.hpp"
#include "votexfer/montecarlo.hpp"
#include "votexfer/montecarlo_io.hpp"

namespace votexfer::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

/// Flags shared by the subcommands; each subcommand registers the ones it uses.
struct Options {
    std::string input;
    std::string output;
    std::string formula = "all";
    std::optional<double> alpha;
    std::optional<std::string> list_seats;
    std::uint32_t districts = 100;
    std::string k;
    std::string h;
    std::uint64_t runs = 100000;
    std::optional<std::uint64_t> seed;
    std::string format;
    unsigned threads = 0;
    std::string tie_policy = "reject";
};

/// Reported to the user with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<TransferFormula> selected_formulas(const std::string& text) {
    if (text == "all") return {kAllFormulas.begin(), kAllFormulas.end()};
    const auto f = parse_formula(text);
    if (!f) throw UsageError("unknown formula '" + text + "'");
    return {*f};
}

std::uint64_t resolve_seed(const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv("VOTEXFER_SEED"); env && *env) {
        std::uint64_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("VOTEXFER_SEED is not an unsigned 64-bit integer: '" + std::string(text) + "'");
        }
        return value;
    }
    return kDefaultSeed;
}

double single_real(const std::string& flag, const std::string& text) {
    const auto values = parse_real_grid(text);
    if (values.size() != 1) throw UsageError(flag + " takes a single value here");
    return values.front();
}

std::vector<std::uint32_t> seat_counts(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (auto v : parse_int_grid(text)) {
        if (v < 0 || v > 0xFFFFFFFFll) throw UsageError("--list-seats values must be non-negative");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw UsageError("--list-seats grid is empty");
    return out;
}

/// Sends the report to --output when given, otherwise to `out`.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) throw UsageError("cannot open output file: " + opt.output);
    file << text;
}

int cmd_allocate(const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.alpha.has_value() == opt.list_seats.has_value()) {
        throw UsageError("allocate needs exactly one of --alpha / --list-seats");
    }
    const auto policy = opt.tie_policy == "reject" ? TieBreakPolicy::Reject : TieBreakPolicy::LowestIndexWins;
    const auto formulas = selected_formulas(opt.formula);

    ValidatedElection election = validate_election(load_election(opt.input));
    for (const auto& w : election.warnings()) err << "warning: " << w << '\n';

    TierWeights weights = TierWeights::from_alpha(1.0);
    if (opt.alpha) {
        weights = TierWeights::from_alpha(*opt.alpha);
    } else {
        const auto seats = seat_counts(*opt.list_seats);
        if (seats.size() != 1) throw UsageError("allocate takes a single --list-seats value");
        weights = TierWeights::from_seats(election.district_count(), seats.front());
    }

    std::ostringstream report;
    nlohmann::ordered_json doc;
    if (opt.format == "json") {
        doc["alpha"] = weights.alpha();
        doc["parties"] = nlohmann::ordered_json::array();
        for (const auto& p : election.parties()) doc["parties"].push_back(p.name);
        doc["warnings"] = election.warnings();
        doc["results"] = nlohmann::ordered_json::array();
    } else {
        report << "formula,party,direct,losing,wasted,total,list_share,ssd_share,combined\n";
    }

    for (auto f : formulas) {
        const auto breakdown = list_vote_breakdown(election, f, policy);
        const auto shares = seat_shares(election, f, weights, policy);
        nlohmann::ordered_json parties = nlohmann::ordered_json::array();
        for (std::size_t p = 0; p < election.party_count(); ++p) {
            const auto& pools = breakdown.parties[p];
            const auto& s = shares.parties[p];
            if (opt.format == "json") {
                parties.push_back({{"name", election.parties()[p].name},
                                   {"direct", pools.direct},
                                   {"losing", pools.losing},
                                   {"wasted", pools.wasted},
                                   {"total", pools.total},
                                   {"list_share", s.list_share},
                                   {"ssd_share", s.ssd_share},
                                   {"combined", s.combined}});
            } else {
                report << formula_key(f) << ',' << election.parties()[p].name << ',' << pools.direct << ','
                       << pools.losing << ',' << pools.wasted << ',' << pools.total << ','
                       << format_double(s.list_share) << ',' << format_double(s.ssd_share) << ','
                       << format_double(s.combined) << '\n';
            }
        }
        if (opt.format == "json") doc["results"].push_back({{"formula", formula_key(f)}, {"parties", parties}});
    }
    emit(opt, out, opt.format == "json" ? doc.dump(2) + "\n" : report.str());
    return kOk;
}

int cmd_analytic(const Options& opt, std::ostream& out, std::ostream&) {
    if (opt.alpha && opt.list_seats) throw UsageError("--alpha and --list-seats are mutually exclusive");
    const auto formulas = selected_formulas(opt.formula);
    const double h = single_real("--h", opt.h);
    const auto grid = parse_real_grid(opt.k);
    if (grid.empty()) throw UsageError("--k grid is empty");

    // One weight per formula: either shared, or --list-seats given once per formula.
    std::vector<std::optional<TierWeights>> weights(formulas.size());
    if (opt.alpha) {
        std::fill(weights.begin(), weights.end(), TierWeights::from_alpha(*opt.alpha));
    } else if (opt.list_seats) {
        const auto seats = seat_counts(*opt.list_seats);
        if (seats.size() != 1 && seats.size() != formulas.size()) {
            throw UsageError("--list-seats needs one value or one per selected formula");
        }
        for (std::size_t i = 0; i < formulas.size(); ++i) {
            weights[i] = TierWeights::from_seats(opt.districts, seats.size() == 1 ? seats[0] : seats[i]);
        }
    }

    std::ostringstream report;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (opt.format != "json") report << "k,formula,value\n";
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        for (const auto& point : analytic::curve(formulas[i], h, grid, weights[i])) {
            if (opt.format == "json") {
                rows.push_back({{"k", point.k}, {"formula", formula_key(formulas[i])}, {"value", point.value}});
            } else {
                report << format_double(point.k) << ',' << formula_key(formulas[i]) << ','
                       << format_double(point.value) << '\n';
            }
        }
    }
    emit(opt, out, opt.format == "json" ? rows.dump(2) + "\n" : report.str());
    return kOk;
}

mc::SimConfig base_config(const Options& opt) {
    if (opt.alpha) throw UsageError("simulations derive alpha from --districts and --list-seats; use --list-seats");
    if (!opt.list_seats) throw UsageError("--list-seats is required");
    mc::SimConfig config;
    config.n_districts = opt.districts;
    config.runs = opt.runs;
    config.seed = resolve_seed(opt);
    return config;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream&) {
    auto config = base_config(opt);
    const auto seats = seat_counts(*opt.list_seats);
    if (seats.size() != 1) throw UsageError("simulate takes a single --list-seats value");
    config.list_seats = seats.front();
    config.k = single_real("--k", opt.k);
    config.h = single_real("--h", opt.h);

    const auto tally = mc::simulate(config, opt.threads);
    if (opt.format == "csv") {
        emit(opt, out, mc::sweep_csv_header(true) + "\n" + mc::sweep_csv_line(tally, true) + "\n");
    } else {
        emit(opt, out, mc::tally_json_string(tally));
    }
    return kOk;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
    auto base = base_config(opt);
    const auto h_grid = parse_real_grid(opt.h);
    const auto k_grid = parse_real_grid(opt.k);
    const auto m_grid = seat_counts(*opt.list_seats);
    if (h_grid.empty() || k_grid.empty()) throw UsageError("sweep grids must not be empty");

    std::vector<mc::SimConfig> configs;
    for (double h : h_grid) {
        for (auto m : m_grid) {
            for (double k : k_grid) {
                auto c = base;
                c.h = h;
                c.list_seats = m;
                c.k = k;
                configs.push_back(c);
            }
        }
    }

    const auto rows = mc::sweep(configs, base.seed, opt.threads);
    bool failed = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].tally) continue;
        failed = true;
        err << "sweep cell " << i << " (k=" << format_double(rows[i].config.k)
            << " h=" << format_double(rows[i].config.h) << " m=" << rows[i].config.list_seats
            << ") failed: " << rows[i].error << '\n';
    }
    std::ostringstream csv;
    mc::write_sweep_csv(csv, rows, true);
    emit(opt, out, csv.str());
    return failed ? kPartialSweep : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vote-transfer mixed-member electoral model: allocation, analytics and simulation.\n"
                 "All shares are printed as fractions in [0, 1], not percentages."};
    app.name(args.empty() ? "votexfer" : args.front());
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> formulas{"dvt", "pvt", "nvt", "all"};

    auto add_output = [&](CLI::App* cmd) { cmd->add_option("--output", opt.output, "Write the report to PATH"); };
    auto add_formula = [&](CLI::App* cmd) {
        cmd->add_option("--formula", opt.formula, "Transfer formula")
            ->check(CLI::IsMember(formulas, CLI::ignore_case))
            ->capture_default_str();
    };
    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", opt.threads, "Worker cap (0 = all cores); results do not depend on it")
            ->capture_default_str();
    };
    auto add_sim = [&](CLI::App* cmd) {
        cmd->add_option("--districts", opt.districts, "Number of single-seat districts")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--runs", opt.runs, "Monte Carlo runs per cell")->capture_default_str();
        cmd->add_option("--seed", opt.seed, "Seed (default: $VOTEXFER_SEED, else 1)");
        add_threads(cmd);
    };

    auto* allocate = app.add_subcommand("allocate", "Seat shares of a concrete election file");
    allocate->add_option("--input", opt.input, "Election JSON {\"parties\": [...], \"districts\": [[...], ...]}")
        ->required();
    add_output(allocate);
    add_formula(allocate);
    auto* a_alpha = allocate->add_option("--alpha", opt.alpha, "Share of mandates filled in districts");
    auto* a_seats = allocate->add_option("--list-seats", opt.list_seats, "Number of list seats");
    a_alpha->excludes(a_seats);
    allocate->add_option("--tie-policy", opt.tie_policy, "District tie handling")
        ->check(CLI::IsMember({"reject", "lowest-index"}))
        ->capture_default_str();
    allocate->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* analytic_cmd = app.add_subcommand("analytic", "Expected list or seat shares under the uniform model");
    add_output(analytic_cmd);
    add_formula(analytic_cmd);
    analytic_cmd->add_option("--k", opt.k, "Grid of expected shares: a,b,c or start:stop:step")->required();
    analytic_cmd->add_option("--h", opt.h, "Half-width of the district share distribution")->required();
    auto* n_alpha = analytic_cmd->add_option("--alpha", opt.alpha, "Seat shares with this district weight");
    auto* n_seats = analytic_cmd->add_option("--list-seats", opt.list_seats,
                                             "Seat shares with m list seats; one value or one per formula");
    n_alpha->excludes(n_seats);
    analytic_cmd->add_option("--districts", opt.districts, "Districts used with --list-seats")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analytic_cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo tally for one (k, h, m) cell");
    add_output(simulate);
    simulate->add_option("--k", opt.k, "Expected district share of the majority party")->required();
    simulate->add_option("--h", opt.h, "Half-width of the district share distribution")->required();
    simulate->add_option("--list-seats", opt.list_seats, "Number of list seats m")->required();
    simulate->add_option("--alpha", opt.alpha, "Not accepted; alpha follows from --districts and --list-seats");
    add_sim(simulate);
    simulate->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"csv", "json"}));

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo tallies over k x h x m grids, CSV");
    add_output(sweep);
    sweep->add_option("--k", opt.k, "Grid of k")->required();
    sweep->add_option("--h", opt.h, "Grid of h")->required();
    sweep->add_option("--list-seats", opt.list_seats, "Grid of list seats m")->required();
    sweep->add_option("--alpha", opt.alpha, "Not accepted; alpha follows from --districts and --list-seats");
    add_sim(sweep);
    sweep->add_option("--format", opt.format, "csv only")->check(CLI::IsMember({"csv"}));

    try {
        std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
    try {
        opt.formula = [&] {
            std::string f = opt.formula;
            std::transform(f.begin(), f.end(), f.begin(), [](unsigned char c) { return std::tolower(c); });
            return f;
        }();
        if (allocate->parsed()) {
            if (opt.format.empty()) opt.format = "csv";
            return cmd_allocate(opt, out, err);
        }
        if (analytic_cmd->parsed()) {
            if (opt.format.empty()) opt.format = "csv";
            return cmd_analytic(opt, out, err);
        }
        if (simulate->parsed()) {
            if (opt.format.empty()) opt.format = "json";
            return cmd_simulate(opt, out, err);
        }
        if (opt.format.empty()) opt.format = "csv";
        return cmd_sweep(opt, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const TieError& e) {
        err << "error: " << e.what() << " (use --tie-policy lowest-index to resolve)\n";
        return kTie;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ZeroTotalVotesError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace votexfer::cli
