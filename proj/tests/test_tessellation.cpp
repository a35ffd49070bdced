#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "channelfield/rng.hpp"
#include "channelfield/stats.hpp"
#include "channelfield/tessellation.hpp"

using namespace channelfield;

namespace {

// Brute-force oracle: argmax of strength over all covering domains,
// ignoring the spatial index entirely.
std::int32_t phi_linear(const Configuration& c, Vec2 x) {
    std::int32_t best = kTheta;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (!domain_of(c.points[i]).rect.contains(x)) continue;
        if (best == kTheta || c.points[i].xi > c.points[best].xi)
            best = static_cast<std::int32_t>(i);
    }
    return best;
}

}  // namespace

TEST_CASE("domain_of follows the displayed map") {
    const InfluenceDomain h = domain_of({{0, 0}, 2.0, 3.0, 1});
    CHECK(h.rect == Rect{0, 0, 6, 1});
    const InfluenceDomain v = domain_of({{0, 0}, 2.0, 3.0, 2});
    CHECK(v.rect == Rect{0, 0, 1, 6});
    const InfluenceDomain deg = domain_of({{5, -1}, 0.0, 7.0, 1});
    CHECK(deg.rect == Rect{5, -1, 5, 0});
    CHECK(deg.rect.contains(Vec2{5.0, -0.5}));  // degenerate but closed
}

TEST_CASE("phi on hand-built configurations") {
    const Rect window{0, 0, 10, 10};
    SUBCASE("empty configuration gives Theta everywhere") {
        const TessellationView view(Configuration::manual({}, window, 1.5));
        CHECK(view.phi_at({5, 5}) == kTheta);
        const auto vt = view.v_tilde_at({5, 5});
        CHECK(vt[0] == 0.5);
        CHECK(vt[1] == 0.5);
    }
    SUBCASE("single and overlapping domains") {
        std::vector<MarkedPoint> pts = {
            {{1, 1}, 4.0, 2.0, 1},  // [1,9]x[1,2]
            {{3, 0}, 1.0, 5.0, 2},  // [3,4]x[0,5]
        };
        const TessellationView view(Configuration::manual(pts, window, 1.5));
        CHECK(view.phi_at({2.0, 1.5}) == 0);
        CHECK(view.phi_at({3.5, 1.5}) == 1);  // overlap: higher strength wins
        CHECK(view.phi_at({3.5, 4.0}) == 1);
        CHECK(view.phi_at({9.5, 9.5}) == kTheta);
        CHECK(view.v_tilde_at({2.0, 1.5}) == std::array<double, 2>{1.0, 0.0});
        CHECK(view.v_tilde_at({3.5, 4.0}) == std::array<double, 2>{0.0, 1.0});
        CHECK_THROWS_AS(view.phi_at({11.0, 5.0}), OutOfWindowError);
    }
    SUBCASE("boundary points are covered, ties break lexicographically") {
        std::vector<MarkedPoint> pts = {
            {{1, 1}, 1.0, 2.0, 1},  // [1,3]x[1,2]
            {{3, 1}, 1.0, 2.0, 1},  // [3,5]x[1,2], shares the edge x=3
        };
        const TessellationView view(Configuration::manual(pts, window, 1.5));
        CHECK(view.phi_at({3.0, 1.5}) == 1);  // equal strength: larger x1 wins
        CHECK(view.tie_count() > 0);
    }
}

TEST_CASE("index agrees with the linear scan") {
    const IntensityParams params{1.5};
    Philox pick(123);
    std::uint64_t ties = 0;
    for (int rep = 0; rep < 8; ++rep) {
        const Rect window{0, 0, 12, 9};
        const Configuration c =
            sample_configuration(window, 1e-3, params, 4000 + rep);
        const TessellationView view(c);
        for (int q = 0; q < 1000; ++q) {
            const Vec2 x{pick.uniform(window.x0, window.x1),
                         pick.uniform(window.y0, window.y1)};
            CHECK(view.phi_at(x) == phi_linear(c, x));
        }
        // region queries against the scan
        for (int q = 0; q < 300; ++q) {
            const Vec2 lo{pick.uniform(0, 11), pick.uniform(0, 8)};
            const Rect region{lo.x, lo.y, lo.x + pick.u01(), lo.y + pick.u01()};
            double max_xi = 0.0;
            for (const auto& p : c.points)
                if (domain_of(p).rect.intersects(region))
                    max_xi = std::max(max_xi, p.xi);
            CHECK(view.max_xi_over(region).first == max_xi);
            CHECK(view.no_stronger(region, max_xi));
            if (max_xi > 0.0) CHECK_FALSE(view.no_stronger(region, max_xi * 0.999));
        }
        ties += view.tie_count();
    }
    CHECK(ties == 0);  // sampled strengths never tie
}

TEST_CASE("region_constant matches grid and witness oracles") {
    const IntensityParams params{1.5};
    Philox pick(77);
    for (int rep = 0; rep < 200; ++rep) {
        const Rect window{0, 0, 8, 8};
        const Configuration c = sample_configuration(window, 1e-2, params, 7000 + rep);
        const TessellationView view(c);
        const Vec2 x{pick.uniform(1, 7), pick.uniform(1, 7)};
        const std::int32_t owner = view.phi_at(x);
        if (owner == kTheta) continue;
        const Rect region{x.x - 0.3, x.y - 0.3, x.x + 0.3, x.y + 0.3};
        const bool constant = view.region_constant(region, owner);
        bool grid_ok = true;
        Vec2 witness{};
        for (int i = 0; i <= 50 && grid_ok; ++i) {
            for (int j = 0; j <= 50; ++j) {
                const Vec2 g{region.x0 + region.width() * i / 50.0,
                             region.y0 + region.height() * j / 50.0};
                if (phi_linear(c, g) != owner) {
                    grid_ok = false;
                    witness = g;
                    break;
                }
            }
        }
        if (constant) {
            CHECK(grid_ok);  // necessary side: every grid point agrees
        } else if (!grid_ok) {
            CHECK(phi_linear(c, witness) != owner);
        } else {
            // The grid can miss a sliver; the set logic must still exhibit
            // either a coverage gap or a stronger intersecting domain.
            const bool covered = domain_of(c.points[owner]).rect.contains(region);
            bool stronger = false;
            for (const auto& p : c.points)
                if (p.xi > c.points[owner].xi &&
                    domain_of(p).rect.intersects(region))
                    stronger = true;
            CHECK((!covered || stronger));
        }
    }
}

TEST_CASE("region_constant set logic on built cases") {
    const Rect window{0, 0, 10, 10};
    std::vector<MarkedPoint> pts = {
        {{1, 1}, 3.0, 2.0, 1},   // [1,7]x[1,2]
        {{4, 0}, 2.0, 6.0, 2},   // [4,5]x[0,12] -> clipped by window queries
    };
    const TessellationView view(Configuration::manual(pts, window, 1.5));
    CHECK_FALSE(view.region_constant({0.5, 1.2, 2.0, 1.8}, 0));  // sticks out left
    CHECK(view.region_constant({1.0, 1.0, 3.9, 2.0}, 0));        // up to the blocker
    CHECK_FALSE(view.region_constant({1.0, 1.0, 4.0, 2.0}, 0));  // touches it
    CHECK(view.region_constant({1.0, 1.0, 4.0, 2.0}, 0,
                               OpenSides{.x_hi = true}));        // unless open
    // Degenerate segment region on the shared boundary line x = 4.
    CHECK(view.region_constant({4.0, 1.0, 4.0, 2.0}, 1));
    CHECK_FALSE(view.region_constant({4.0, 1.0, 4.0, 2.0}, 0));
}

TEST_CASE("domains meeting a unit square: finite count matching the mass") {
    const IntensityParams params{1.5};
    const Rect square{3, 3, 4, 4};
    std::vector<double> counts;
    for (int rep = 0; rep < 4000; ++rep) {
        const Configuration c = sample_configuration({0, 0, 7, 7}, 1e-3, params,
                                                     20000 + rep);
        double k = 0;
        for (const auto& p : c.points)
            if (domain_of(p).rect.intersects(square)) k += 1;
        counts.push_back(k);
    }
    const MeanSE m = mean_se(counts);
    CHECK(std::abs(m.mean - 8.0) < 3.0 * m.se + 2e-3);
}

TEST_CASE("index dump is valid json") {
    const Configuration c =
        sample_configuration({0, 0, 4, 4}, 1e-2, IntensityParams{1.5}, 3);
    const TessellationView view(c);
    std::ostringstream os;
    view.dump_index_json(os);
    CHECK(os.str().find("grid_shape") != std::string::npos);
}
