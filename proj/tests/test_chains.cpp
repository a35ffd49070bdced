#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "channelfield/chains.hpp"
#include "channelfield/markov.hpp"
#include "channelfield/stats.hpp"

using namespace channelfield;

namespace {

Configuration load_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    return Configuration::read_jsonl(in);
}

}  // namespace

TEST_CASE("successor pair fixture") {
    const Configuration c = load_fixture("successor_pair.jsonl");
    const TessellationView view(c);
    const MarkedPoint& di = c.points[0];
    const MarkedPoint& dj = c.points[1];
    CHECK(is_successor(di, dj, 3.0, view));
    // trivially false cases: same direction, weaker strength
    MarkedPoint same_dir = dj;
    same_dir.sigma = 1;
    CHECK_FALSE(is_successor(di, same_dir, 3.0, view));
    MarkedPoint weak = dj;
    weak.xi = 1.5;
    CHECK_FALSE(is_successor(di, weak, 3.0, view));
    CHECK_THROWS_AS(is_successor(di, dj, 25.0, view), std::invalid_argument);

    const Configuration p = load_fixture("successor_pair_perturbed.jsonl");
    const TessellationView pview(p);
    CHECK_FALSE(is_successor(p.points[0], p.points[1], 3.0, pview));
}

TEST_CASE("two-level chain fixture reproduces the expected record") {
    const Configuration c = load_fixture("chain_len2.jsonl");
    const TessellationView view(c);
    const ChainRecord rec = detect_chain({1.5, 0.5}, view, 8);

    CHECK(rec.terminal_level == 1);
    CHECK_FALSE(rec.truncated);
    CHECK(rec.anomalies == 0);
    REQUIRE(rec.levels.size() == 2);
    CHECK(rec.levels[0].xi == 2.0);
    CHECK(rec.levels[1].xi == 6.0);
    REQUIRE(rec.b_flags.size() == 3);  // B2 fails: channel 1 is never blocked
    CHECK(rec.b_flags[0]);
    CHECK(rec.b_flags[1]);
    CHECK_FALSE(rec.b_flags[2]);
    CHECK_FALSE(rec.a_flags[2]);

    CHECK(rec.U == std::vector<double>{1.5, 5.0});
    CHECK(rec.V == std::vector<double>{0.5, 1.0});
    CHECK(rec.U_tilde == std::vector<double>{4.0});
    REQUIRE(rec.V_tilde.size() == 2);
    CHECK(rec.V_tilde[0] == 0.0);
    CHECK(rec.V_tilde[1] == doctest::Approx(4.4).epsilon(1e-12));  // channel end

    CHECK(rec.L[0] == doctest::Approx(5.0 - 1.5 / 2.0).epsilon(1e-12));
    CHECK(rec.L[1] == doctest::Approx((-2.8 - 1.0) / 6.0 + 1.2).epsilon(1e-12));
    CHECK(rec.R[1] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(rec.e[0] == 0.0);
    CHECK(rec.e[1] ==
          doctest::Approx(2.5 / rate_normalizer(2.0, 1.5)).epsilon(1e-12));
    REQUIRE(rec.pair_levels.size() == 1);
    CHECK(rec.pair_levels[0] == 1.5);
    CHECK(is_successor(rec.levels[0], rec.levels[1], rec.pair_levels[0], view));

    CHECK(residual_length(rec, 0) == rec.L[0]);
    CHECK_THROWS_AS(residual_length(rec, 2), std::invalid_argument);

    // r-mark scaling: doubling every r shifts each L by exactly r.
    Configuration scaled = c;
    for (auto& p : scaled.points) p.r *= 2.0;
    const TessellationView sview(scaled);
    const ChainRecord srec = detect_chain({1.5, 0.5}, sview, 8);
    REQUIRE(srec.terminal_level >= 1);
    for (int n = 0; n <= 1; ++n)
        CHECK(srec.L[n] ==
              doctest::Approx(rec.L[n] + c.points[n == 0 ? 0 : 1].r).epsilon(1e-12));
}

TEST_CASE("empty configuration fails at the start") {
    const TessellationView view(
        Configuration::manual({}, {-2, -2, 2, 2}, 1.5));
    const ChainRecord rec = detect_chain({0, 0}, view, 4);
    CHECK(rec.terminal_level == -1);
    CHECK_FALSE(rec.b_flags[0]);
    CHECK(rec.levels.empty());
    CHECK_THROWS_AS(detect_chain({-1.5, 0}, view, 4), OutOfWindowError);
}

TEST_CASE("six-domain chain fixture: full bookkeeping") {
    const Configuration c = load_fixture("chain_deep.jsonl");
    const TessellationView view(c);
    const ChainRecord rec = detect_chain({1.5, 0.5}, view, 8);

    CHECK(rec.terminal_level == 5);
    CHECK_FALSE(rec.truncated);
    CHECK(rec.anomalies == 0);
    REQUIRE(rec.levels.size() == 6);
    for (int n = 0; n <= 5; ++n) {
        CHECK(rec.a_flags[n]);
        CHECK(rec.levels[n].xi == doctest::Approx(2.0 + n));
    }
    // strengths strictly increase and directions alternate
    for (int n = 1; n <= 5; ++n) {
        CHECK(rec.levels[n].xi > rec.levels[n - 1].xi);
        CHECK(rec.levels[n].sigma != rec.levels[n - 1].sigma);
    }
    CHECK(rec.U == std::vector<double>{1.5, 5.0, 9.5, 15.0});
    CHECK(rec.V == std::vector<double>{0.5, 1.0, 5.0, 13.0});
    CHECK(rec.U_tilde == std::vector<double>{4.0, 8.5, 14.0});
    REQUIRE(rec.V_tilde.size() == 4);
    CHECK(rec.V_tilde[0] == 0.0);
    CHECK(rec.V_tilde[1] == 4.0);
    CHECK(rec.V_tilde[2] == 12.0);
    CHECK(rec.V_tilde[3] == doctest::Approx(24.5).epsilon(1e-12));

    const std::vector<double> expect_L{12.0 - 0.75, -2.5 / 3.0 + 4.5,
                                       -2.5 / 4.0 + 5.5, -2.5 / 5.0 + 2.7,
                                       -3.5 / 6.0 + 3.0, -2.5 / 7.0 + 2.0};
    const std::vector<double> expect_R{0.0, 2.5, 3.0, 3.5, 7.0, 4.5};
    for (int n = 0; n <= 5; ++n) {
        CHECK(rec.L[n] == doctest::Approx(expect_L[n]).epsilon(1e-12));
        CHECK(rec.R[n] == doctest::Approx(expect_R[n]).epsilon(1e-12));
        if (n >= 1)
            CHECK(rec.e[n] ==
                  doctest::Approx(expect_R[n] /
                                  rate_normalizer(rec.levels[n - 1].xi, 1.5))
                      .epsilon(1e-12));
    }
    // stopping coordinates are strictly monotone along the partial order
    for (std::size_t m = 1; m < rec.U.size(); ++m) CHECK(rec.U[m] > rec.U[m - 1]);
    for (std::size_t m = 1; m < rec.V.size(); ++m) CHECK(rec.V[m] > rec.V[m - 1]);

    // every accepted pair is a successor at the recorded level
    CHECK(rec.pair_levels == std::vector<double>{1.5, 1.0, 5.0, 5.0, 9.5});
    for (int n = 1; n <= 5; ++n)
        CHECK(is_successor(rec.levels[n - 1], rec.levels[n],
                           rec.pair_levels[n - 1], view));

    // blocking race: the recorded B flag agrees with the class-0 win
    for (int n = 0; n <= 4; ++n) {
        const BlockingTimes bt = blocking_times(rec, n, view);
        double min_other = bt.channel_rest;
        for (int j = 1; j < 4; ++j)
            if (!bt.censored[j]) min_other = std::min(min_other, bt.tau[j]);
        const bool complete_first = !bt.censored[0] && bt.tau[0] < min_other;
        CHECK(complete_first == static_cast<bool>(rec.b_flags[n + 1]));
        if (!bt.censored[0])
            CHECK(bt.tau[0] == doctest::Approx(rec.R[n + 1]).epsilon(1e-12));
    }

    // record serializes to json
    std::ostringstream os;
    rec.write_json(os);
    CHECK(os.str().find("\"terminal_level\": 5") != std::string::npos);
}

TEST_CASE("vertical-phase entry through reflection") {
    const IntensityParams params{1.5};
    std::size_t accepted = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const Configuration c =
            sample_configuration({-4, -4, 24, 24}, 1e-3, params, 3200 + rep);
        const Configuration rc = reflected(c);
        const TessellationView rview(rc);
        // Detecting from the swapped start in the reflected world and
        // mapping back yields a chain of the original configuration that
        // begins in the vertical phase.
        const ChainRecord b = reflect(detect_chain({2.0, 1.0}, rview, 4));
        CHECK(b.y == Vec2{1.0, 2.0});
        if (b.terminal_level < 0) continue;
        ++accepted;
        CHECK(b.levels[0].sigma == 2);
        const TessellationView view(c);
        for (std::size_t i = 0; i < b.levels.size(); ++i) {
            bool found = false;
            for (const auto& p : c.points)
                found |= p.x == b.levels[i].x && p.xi == b.levels[i].xi;
            CHECK(found);
        }
        // double reflection restores the reflected-world record exactly
        const ChainRecord again = reflect(reflect(b));
        CHECK(again.U == b.U);
        CHECK(again.V == b.V);
    }
    CHECK(accepted > 5);
}

TEST_CASE("sampled ensembles: L0 law, successor consistency, race consistency") {
    const IntensityParams params{1.5};
    std::vector<double> l0;
    std::size_t pairs_checked = 0, races_checked = 0;
    for (int rep = 0; rep < 4000 && l0.size() < 2000; ++rep) {
        const Configuration c =
            sample_configuration({-4, -4, 26, 10}, 1e-3, params, 50000 + rep);
        const TessellationView view(c);
        const ChainRecord rec = detect_chain({0, 0}, view, 3);
        if (!rec.b_flags[0]) continue;
        l0.push_back(rec.L[0]);
        CHECK(rec.anomalies == 0);
        for (int n = 1; n <= rec.terminal_level; ++n) {
            CHECK(is_successor(rec.levels[n - 1], rec.levels[n],
                               rec.pair_levels[n - 1], view));
            ++pairs_checked;
        }
        for (int n = 0; n + 1 <= rec.terminal_level + 1 && n <= rec.terminal_level;
             ++n) {
            if (rec.truncated) break;
            const BlockingTimes bt = blocking_times(rec, n, view);
            if (!bt.complete) continue;
            double min_other = bt.channel_rest;
            for (int j = 1; j < 4; ++j)
                if (!bt.censored[j]) min_other = std::min(min_other, bt.tau[j]);
            const double winner =
                bt.censored[0] ? bt.censor_bound + 1.0 : bt.tau[0];
            if (std::min(winner, min_other) < bt.censor_bound &&
                n + 1 < static_cast<int>(rec.b_flags.size())) {
                CHECK((winner < min_other) ==
                      static_cast<bool>(rec.b_flags[n + 1]));
                ++races_checked;
            }
        }
    }
    REQUIRE(l0.size() >= 2000);
    CHECK(pairs_checked > 50);
    CHECK(races_checked > 200);
    CHECK(ks_statistic(l0, [](double t) { return -std::expm1(-t); }) <
          ks_critical(l0.size()));
}
