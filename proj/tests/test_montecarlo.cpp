#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "reference_data.hpp"
#include "votexfer/montecarlo.hpp"
#include "votexfer/montecarlo_io.hpp"

using namespace votexfer;
using namespace votexfer::mc;
using enum TransferFormula;

namespace {

SimConfig config(double k, double h, std::uint32_t m, std::uint64_t runs, std::uint64_t seed = 1,
                 std::uint32_t n = 100) {
    SimConfig c;
    c.k = k;
    c.h = h;
    c.list_seats = m;
    c.runs = runs;
    c.seed = seed;
    c.n_districts = n;
    return c;
}

Tally tally_with_counts(const std::array<std::int64_t, 8>& counts) {
    Tally t;
    for (std::size_t i = 0; i < 8; ++i) t.counts[i] = static_cast<std::uint64_t>(counts[i]);
    return t;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(config(0.51, 0.1, 100, 10).validate());
    CHECK_THROWS_AS(config(0.51, 0.1, 100, 0).validate(), DomainError);
    CHECK_THROWS_AS(config(0.51, 0.1, 100, 10, 1, 0).validate(), DomainError);
    CHECK_THROWS_AS(config(0.60, 0.1, 100, 10).validate(), DomainError);
    CHECK_THROWS_AS(config(0.50, 0.1, 100, 10).validate(), DomainError);
    CHECK_THROWS_AS(simulate(config(0.50, 0.1, 100, 10)), DomainError);
    CHECK(config(0.51, 0.1, 60, 10).alpha() == 0.625);
}

TEST_CASE("district draws") {
    const auto c = config(0.51, 0.1, 100, 1000, 1);
    for (std::uint64_t r = 0; r < 50; ++r) {
        for (double v : draw_districts(c, r)) {
            CHECK(v >= 0.41);
            CHECK(v <= 0.61);
        }
    }
    CHECK(draw_districts(c, 7) == draw_districts(c, 7));
    CHECK(draw_districts(c, 7) != draw_districts(c, 8));

    // Law of large numbers: 10^5 draws, standard error 0.2 / sqrt(12 * 10^5) = 1.8e-4.
    double sum = 0;
    for (std::uint64_t r = 0; r < 1000; ++r) {
        for (double v : draw_districts(c, r)) sum += v;
    }
    CHECK(std::abs(sum / 1e5 - 0.51) < 0.001);

    std::vector<double> wrong(3);
    CHECK_THROWS_AS(draw_districts(c, 0, wrong), std::invalid_argument);
}

TEST_CASE("single run evaluation") {
    SUBCASE("two districts of the worked example") {
        const auto c = config(0.55, 0.1, 2, 1, 1, 2);
        const std::vector<double> shares{0.65, 0.45};
        const auto o = run_once(shares, c);
        CHECK(o.districts_won == 1);
        CHECK(std::abs(o.seat(NVT) - 0.5390625) < 1e-12);
        CHECK(std::abs(o.seat(NVT) - (0.5 * 0.5 + 0.5 * 185.0 / 320.0)) < 1e-12);
        CHECK(std::abs(o.seat(PVT) - (0.25 + 0.5 * 155.0 / 280.0)) < 1e-12);
        CHECK(std::abs(o.seat(DVT) - (0.25 + 0.5 * 0.55)) < 1e-12);
        CHECK(o.vote_share == doctest::Approx(0.55));
    }
    SUBCASE("identical districts reduce to the all-won closed form") {
        const auto c = config(0.53, 0.1, 0, 1, 1, 10);
        const std::vector<double> shares(10, 0.53);
        auto zero_alpha = c;
        zero_alpha.list_seats = 0;
        // alpha = 1 here; recover the list share from an alpha = 0.5 config instead.
        auto half = c;
        half.list_seats = 10;
        const auto o = run_once(shares, half);
        const double list_pvt = 2.0 * (o.seat(PVT) - 0.5);
        CHECK(std::abs(list_pvt - 0.53 / (2.0 - 0.53)) < 1e-12);
        CHECK(run_once(shares, zero_alpha).seat(PVT) == 1.0);
    }
    SUBCASE("vanishing margins everywhere") {
        const auto c = config(0.51, 0.1, 100, 1, 1, 100);
        const std::vector<double> shares(100, 0.5 + 1e-12);
        const auto o = run_once(shares, c);
        CHECK(o.seat(DVT) == doctest::Approx(0.5 + 0.5 * 0.5));
        CHECK(o.tied_districts == 0);
    }
    SUBCASE("exact ties go to the majority party and are flagged") {
        const auto c = config(0.51, 0.1, 3, 1, 1, 3);
        const std::vector<double> shares{0.5, 0.6, 0.45};
        const auto o = run_once(shares, c);
        CHECK(o.districts_won == 2);
        CHECK(o.tied_districts == 1);
    }
    SUBCASE("preconditions") {
        const auto c = config(0.51, 0.1, 3, 1, 1, 3);
        const std::vector<double> two{0.5, 0.6};
        const std::vector<double> bad{0.5, 1.2, 0.3};
        CHECK_THROWS_AS(run_once(two, c), std::invalid_argument);
        CHECK_THROWS_AS(run_once(bad, c), std::invalid_argument);
    }
    SUBCASE("agrees with the direct pool oracle") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> share(0.0, 1.0);
        for (int trial = 0; trial < 500; ++trial) {
            const std::uint32_t n = 1 + gen() % 30;
            const auto c = config(0.51, 0.1, static_cast<std::uint32_t>(gen() % 50), 1, 1, n);
            std::vector<double> shares(n);
            for (auto& s : shares) s = share(gen);
            const auto o = run_once(shares, c);
            const auto expect = oracle::seat_shares_from_districts(shares, c.alpha());
            for (auto f : kAllFormulas) {
                CHECK(std::abs(o.seat(f) - expect[formula_index(f)]) < 1e-12);
                CHECK(o.has_majority(f) == (o.seat(f) > 0.5));
                CHECK(o.seat(f) >= 0.0);
                CHECK(o.seat(f) <= 1.0);
            }
        }
    }
}

TEST_CASE("classification is a partition of the flag triples") {
    using enum MajorityCategory;
    CHECK(classify(true, true, true) == AllThree);
    CHECK(classify(false, true, true) == PvtNvtOnly);
    CHECK(classify(true, false, true) == DvtNvtOnly);
    CHECK(classify(true, true, false) == DvtPvtOnly);
    CHECK(classify(true, false, false) == DvtOnly);
    CHECK(classify(false, true, false) == PvtOnly);
    CHECK(classify(false, false, true) == NvtOnly);
    CHECK(classify(false, false, false) == Minority);

    std::set<MajorityCategory> seen;
    for (int bits = 0; bits < 8; ++bits) {
        const bool d = bits & 1, p = bits & 2, n = bits & 4;
        const auto c = classify(d, p, n);
        seen.insert(c);
        CHECK(category_flags(c) == std::array{d, p, n});
    }
    CHECK(seen.size() == 8);
}

TEST_CASE("net advantage over DVT") {
    const auto t = tally_with_counts(reference::kClassification[0].counts);
    CHECK(net_advantage(t, PVT) == 7515);
    CHECK(net_advantage(t, NVT) == 18434);
    CHECK(net_advantage(tally_with_counts({500, 0, 0, 0, 0, 0, 0, 20}), NVT) == 0);
    CHECK(net_advantage(tally_with_counts({0, 0, 5, 0, 0, 0, 0, 0}), PVT) == -5);
    CHECK_THROWS_AS(net_advantage(t, DVT), std::invalid_argument);
    CHECK(t.majority_count(DVT) == 864107 + 9 + 1);
    CHECK(t.majority_count(PVT) == 864107 + 7516 + 9);
    CHECK(t.majority_count(NVT) == 864107 + 7516 + 10928);
}

TEST_CASE("simulation tallies") {
    const auto c = config(0.52, 0.1, 100, 20000, 99);
    const auto t = simulate(c, 1);
    std::uint64_t sum = 0;
    for (auto n : t.counts) sum += n;
    CHECK(sum == t.runs);
    CHECK(t.runs == c.runs);
    CHECK(t.config == c);
    CHECK(t.rng.generator == "philox4x32-10");
    CHECK(t.rng.seed == 99);

    SUBCASE("worker count does not change a single bit") {
        for (unsigned threads : {2u, 3u, 8u, 64u}) CHECK(simulate(c, threads) == t);
    }
    SUBCASE("merging partial accumulators in any grouping is exact") {
        const auto a = accumulate_runs(c, 0, 7000);
        const auto b = accumulate_runs(c, 7000, 13001);
        const auto d = accumulate_runs(c, 13001, c.runs);
        TallyAccumulator left = a;
        left.merge(b);
        left.merge(d);
        TallyAccumulator right = d;
        TallyAccumulator bc = b;
        bc.merge(a);
        right.merge(bc);
        CHECK(left == right);
        CHECK(left.finish(c) == t);
    }
    SUBCASE("different seeds give different tallies") { CHECK(simulate(config(0.52, 0.1, 100, 20000, 100)) != t); }
}

TEST_CASE("simulated means track the closed form") {
    // 10^5 runs: per-run seat share sd < 0.03, standard error < 1e-4.
    const auto c = config(0.53, 0.1, 100, 100000, 5);
    const auto t = simulate(c, 0);
    const analytic::UniformVoteModel model(0.53, 0.1);
    for (auto f : kAllFormulas) {
        CHECK(std::abs(t.mean_seat(f) - analytic::expected_seat_share(model, f, c.weights())) < 0.002);
    }
    CHECK(std::abs(t.mean_seat(NVT) - 0.57506) < 0.002);
    CHECK(std::abs(t.mean_vote_share - 0.53) < 0.001);
}

TEST_CASE("enumeration oracle, two districts") {
    const auto c = config(0.52, 0.1, 2, 100000, 17, 2);
    const auto t = simulate(c);
    const auto freq = oracle::enumerate_majority_frequencies(2, 0.52, 0.1, c.alpha(), 101);
    for (auto f : kAllFormulas) {
        CHECK(std::abs(static_cast<double>(t.majority_count(f)) / t.runs - freq[formula_index(f)]) < 0.01);
    }
}

TEST_CASE("sweep") {
    std::vector<SimConfig> grid;
    for (double h : {0.1, 0.2}) {
        for (std::uint32_t m : {60u, 100u}) {
            for (double k : {0.51, 0.52, 0.53}) grid.push_back(config(k, h, m, 500));
        }
    }
    grid.push_back(config(0.7, 0.1, 100, 500));  // outside the admissible strip
    const auto rows = sweep(grid, 2024);
    REQUIRE(rows.size() == grid.size());
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].config.k == grid[i].k);
        CHECK(rows[i].config.seed == derive_seed(2024, i));
        seeds.insert(rows[i].config.seed);
    }
    CHECK(seeds.size() == rows.size());
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) REQUIRE(rows[i].tally.has_value());
    CHECK_FALSE(rows.back().tally.has_value());
    CHECK_FALSE(rows.back().error.empty());
    CHECK(*rows[4].tally == simulate(rows[4].config));
    const auto again = sweep(grid, 2024, 4);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(*again[i].tally == *rows[i].tally);
}

TEST_CASE("tally JSON round trip and CSV schema") {
    const auto t = simulate(config(0.51, 0.2, 60, 3000, 77), 2);
    const auto text = tally_json_string(t);
    CHECK(tally_from_json(nlohmann::json::parse(text)) == t);
    const auto doc = nlohmann::json::parse(text);
    for (const char* key : {"config", "rng_metadata", "runs", "mean_vote_share", "mean_seat_share", "counts"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["counts"].size() == 8);
    CHECK_THROWS_AS(tally_from_json(nlohmann::json::parse(R"({"runs": 3})")), ParseError);

    CHECK(sweep_csv_header(false) ==
          "k,h,m,alpha,runs,seed,mean_vote_share,mean_seat_share_dvt,mean_seat_share_pvt,mean_seat_share_nvt,"
          "all_three,pvt_nvt,dvt_nvt,dvt_pvt,dvt_only,pvt_only,nvt_only,minority");
    CHECK(sweep_csv_header(true) == sweep_csv_header(false) + ",net_advantage_pvt,net_advantage_nvt");
    const auto line = sweep_csv_line(t, true);
    CHECK(line.rfind("0.51,0.2,60,0.625,3000,77,", 0) == 0);
    const auto header = sweep_csv_header(true);
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
    std::ostringstream os;
    std::vector<SweepRow> rows{{t.config, t, ""}, {t.config, std::nullopt, "bad"}};
    write_sweep_csv(os, rows, false);
    CHECK(os.str() == sweep_csv_header(false) + "\n" + sweep_csv_line(t, false) + "\n");
}
