#pragma once

#include <array>
#include <functional>
#include <vector>

#include "channelfield/geometry.hpp"

namespace channelfield {

using FieldFn = std::function<std::array<double, 2>(Vec2)>;

// Trajectory of the autonomous ODE gamma' = v(gamma), gamma(0) = z, sampled
// at multiples of the step. `truncated` marks curves stopped early because
// the next step could leave the safe evaluation region.
struct Curve {
    Vec2 start;
    double step = 0.0;
    std::vector<double> times;
    std::vector<Vec2> positions;
    bool truncated = false;

    Vec2 at(double t) const;  // linear interpolation between samples
};

// Classical fixed-step RK4. The field must have nonnegative components, so
// every stage point of a step from p lies in p + [0, step]^2; a step is
// taken only if that square stays inside `safe`.
Curve integrate_curve(Vec2 z, double t_end, double step, const FieldFn& field,
                      const Rect& safe);

// Running extremes of the direction ratio (gamma2-origin2)/(gamma1-origin1)
// at dyadic checkpoint times 1, 2, 4, ... Checkpoints whose denominator is
// not positive are skipped and counted.
struct RatioStats {
    std::vector<double> times;
    std::vector<double> ratio;
    std::vector<double> running_min;
    std::vector<double> running_max;
    std::size_t skipped = 0;
};

RatioStats ratio_stats(const Curve& curve, Vec2 origin);

}  // namespace channelfield
