#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "channelfield/geometry.hpp"
#include "channelfield/rng.hpp"

namespace channelfield {

// One atom of the marked point field: footprint in the plane, Exp(1) length
// factor, Par(alpha) strength, channel direction.
struct MarkedPoint {
    Vec2 x;
    double r = 0.0;         // length factor, r >= 0
    double xi = 1.0;        // strength, xi >= 1
    std::uint8_t sigma = 1; // 1 -> e1 channel, 2 -> e2 channel
};

struct IntensityParams {
    double alpha = 1.5;  // strength tail exponent, must lie in (1,2)
    void validate() const;
};

// Intensity density at eta with respect to dx dr dxi d(count on {1,2}):
// (1/2) alpha e^{-r} / xi^{alpha+1} on {r >= 0, xi >= 1}, zero elsewhere.
double intensity_density(const MarkedPoint& eta, const IntensityParams& params);

// I(c) = int_1^inf (alpha/xi^alpha) e^{-c/xi} dxi, the mass profile of
// channels long enough to bridge a gap of length c. I(0) = alpha/(alpha-1).
double channel_reach_integral(double c, double alpha);

// Mass of D^{-1}(rect): all marked points whose influence domain meets the
// (nondegenerate) rectangle.
double mu_dinv_rect(const Rect& rect, const IntensityParams& params);

// Mass of the points omitted when footprints further than `pad` to the
// left/below the window are discarded even though their domain reaches it.
double omitted_mass(const Rect& window, double pad, const IntensityParams& params);

// Smallest pad with omitted_mass(window, pad) <= epsilon; requires
// 0 < epsilon < 1. Monotone nonincreasing in epsilon.
double truncation_pad(const Rect& window, double epsilon,
                      const IntensityParams& params);

// A finite draw of every marked point whose influence domain meets the
// window, up to the omitted tail mass bound. Immutable after construction.
struct Configuration {
    std::vector<MarkedPoint> points;
    Rect window;
    double alpha = 1.5;
    double epsilon = 0.0;        // requested omission bound (0 for manual configs)
    double pad = 0.0;            // footprint truncation distance actually used
    double omitted_bound = 0.0;  // analytic mass bound actually achieved
    std::uint64_t seed = 0;

    static Configuration manual(std::vector<MarkedPoint> pts, const Rect& window,
                                double alpha);

    void write_jsonl(std::ostream& os) const;
    static Configuration read_jsonl(std::istream& is);
};

// Swaps the two coordinates (and channel directions); detection of chains
// that start in the vertical phase runs on the reflected configuration.
Configuration reflected(const Configuration& config);

// Draws the configuration for `window`: footprints inside the window (plus
// the width-1 margins a domain can bridge) are sampled at full intensity,
// and the two heavy-tailed strips of far footprints whose channels reach the
// window are sampled from their exact conditional law, truncated at the pad
// distance for `epsilon`. Deterministic in (window, epsilon, params, seed).
Configuration sample_configuration(const Rect& window, double epsilon,
                                   const IntensityParams& params,
                                   std::uint64_t seed);

}  // namespace channelfield
