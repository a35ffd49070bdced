#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <vector>

#include "channelfield/pointfield.hpp"

namespace channelfield {

struct OutOfWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfluenceDomain {
    MarkedPoint base;
    Rect rect;
};

// Influence domain of eta: a channel of length r*xi and width 1 extending in
// the +e_sigma direction from the footprint.
InfluenceDomain domain_of(const MarkedPoint& eta);

// phi query result: index of the winning point in the configuration, or
// kTheta when no domain covers the query point.
inline constexpr std::int32_t kTheta = -1;

// Read-only query structure over a configuration: a uniform unit grid over
// the window bucketing the window-clipped influence domains. All queries are
// answerable by a linear scan over the domains; the index only accelerates
// them, and the test suite checks the two agree exactly.
class TessellationView {
  public:
    explicit TessellationView(Configuration config);

    const Configuration& config() const { return config_; }
    const Rect& window() const { return config_.window; }

    // Maximal-strength covering point at x (kTheta if none). Throws
    // OutOfWindowError outside the validity window.
    std::int32_t phi_at(Vec2 x) const;

    // Raw field: e_sigma of the winner, or the diagonal (1/2,1/2) at Theta.
    std::array<double, 2> v_tilde_at(Vec2 x) const;

    // Exactly decides whether phi == eta (given by index) everywhere on the
    // region: [region inside the domain] and [no stronger domain meets it].
    bool region_constant(const Rect& region, std::int32_t eta_index,
                         OpenSides open = {}) const;

    // Largest strength among domains meeting the region (0 if none), with
    // the winning index; used for the dominance tests of chain detection.
    std::pair<double, std::int32_t> max_xi_over(const Rect& region,
                                                OpenSides open = {}) const;

    // True when no domain stronger than xi meets the region.
    bool no_stronger(const Rect& region, double xi, OpenSides open = {}) const;

    // Appends the indices of every domain whose grid cells overlap the
    // region (may contain duplicates; callers tolerate them).
    void gather_candidates(const Rect& region, std::vector<std::uint32_t>& out) const;

    const Rect& domain_rect(std::int32_t i) const { return rects_[static_cast<std::size_t>(i)]; }
    const MarkedPoint& point(std::int32_t i) const {
        return config_.points[static_cast<std::size_t>(i)];
    }

    // Strength ties between distinct points are broken lexicographically by
    // (xi, x1, x2, sigma); sampled configurations never tie, which the
    // counter lets tests assert.
    std::uint64_t tie_count() const { return ties_.load(); }

    void dump_index_json(std::ostream& os) const;

  private:
    void require_inside(const Rect& region) const;
    bool better(std::int32_t challenger, std::int32_t incumbent) const;

    Configuration config_;
    std::vector<Rect> rects_;
    double ox_ = 0.0, oy_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::uint32_t> cell_start_;  // CSR offsets, nx*ny+1
    std::vector<std::uint32_t> cell_items_;
    mutable std::atomic<std::uint64_t> ties_{0};

    int cell_of_x(double x) const;
    int cell_of_y(double y) const;
};

}  // namespace channelfield
