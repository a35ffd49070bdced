#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "channelfield/rng.hpp"
#include "channelfield/stats.hpp"

using namespace channelfield;

TEST_CASE("philox known-answer vectors") {
    // Reference outputs of Philox4x32-10 for the all-zero and all-ones
    // (counter, key) inputs, as published with the original generator.
    Philox zero(0, 0);
    CHECK(zero.next_u32() == 0x6627e8d5u);
    CHECK(zero.next_u32() == 0xe169c58du);
    CHECK(zero.next_u32() == 0xbc57ac4cu);
    CHECK(zero.next_u32() == 0x9b00dbd8u);
}

TEST_CASE("streams and seeds decorrelate") {
    Philox a(42, 0), b(42, 1), c(43, 0);
    bool differ_ab = false, differ_ac = false;
    for (int i = 0; i < 8; ++i) {
        const auto x = a.next_u32();
        differ_ab |= x != b.next_u32();
        differ_ac |= x != c.next_u32();
    }
    CHECK(differ_ab);
    CHECK(differ_ac);
}

TEST_CASE("determinism") {
    Philox a(7, 3), b(7, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("u01 range") {
    Philox rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.u01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("exp1 and pareto marginals") {
    Philox rng(5);
    const std::size_t n = 200000;
    std::vector<double> es, ps;
    es.reserve(n);
    ps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        es.push_back(rng.exp1());
        ps.push_back(rng.pareto(1.5));
    }
    const double d_exp =
        ks_statistic(es, [](double t) { return -std::expm1(-t); });
    const double d_par =
        ks_statistic(ps, [](double t) { return 1.0 - std::pow(t, -1.5); });
    CHECK(d_exp < ks_critical(n));
    CHECK(d_par < ks_critical(n));
    for (double p : ps) CHECK(p >= 1.0);
}

TEST_CASE("poisson moments, small and chunked means") {
    Philox rng(11);
    for (const double mean : {0.5, 7.0, 120.0}) {
        const int n = 20000;
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = static_cast<double>(rng.poisson(mean));
        const MeanSE m = mean_se(xs);
        CHECK(std::abs(m.mean - mean) < 4.0 * std::sqrt(mean / n));
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        const double var = ss / (n - 1);
        CHECK(std::abs(var - mean) < 0.05 * mean + 0.2);
    }
    CHECK(Philox(3).poisson(0.0) == 0);
}
