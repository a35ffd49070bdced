#include "channelfield/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace channelfield {

Vec2 Curve::at(double t) const {
    if (positions.empty()) throw std::runtime_error("Curve::at: empty curve");
    if (t <= times.front()) return positions.front();
    if (t >= times.back()) return positions.back();
    const double s = (t - times.front()) / step;
    const std::size_t i =
        std::min(static_cast<std::size_t>(s), positions.size() - 2);
    const double frac = (t - times[i]) / step;
    return {positions[i].x + frac * (positions[i + 1].x - positions[i].x),
            positions[i].y + frac * (positions[i + 1].y - positions[i].y)};
}

Curve integrate_curve(Vec2 z, double t_end, double step, const FieldFn& field,
                      const Rect& safe) {
    if (!(step > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("integrate_curve: step and t_end must be positive");
    Curve curve;
    curve.start = z;
    curve.step = step;
    const std::size_t n_steps =
        static_cast<std::size_t>(std::llround(t_end / step));
    curve.times.reserve(n_steps + 1);
    curve.positions.reserve(n_steps + 1);
    curve.times.push_back(0.0);
    curve.positions.push_back(z);

    Vec2 p = z;
    for (std::size_t i = 0; i < n_steps; ++i) {
        if (!safe.contains(p) || p.x + step > safe.x1 || p.y + step > safe.y1) {
            curve.truncated = true;
            break;
        }
        const auto k1 = field(p);
        const auto k2 = field({p.x + 0.5 * step * k1[0], p.y + 0.5 * step * k1[1]});
        const auto k3 = field({p.x + 0.5 * step * k2[0], p.y + 0.5 * step * k2[1]});
        const auto k4 = field({p.x + step * k3[0], p.y + step * k3[1]});
        p.x += step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        p.y += step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        curve.times.push_back((i + 1) * step);
        curve.positions.push_back(p);
    }
    return curve;
}

RatioStats ratio_stats(const Curve& curve, Vec2 origin) {
    if (curve.positions.size() < 2)
        throw std::invalid_argument("ratio_stats: curve too short");
    RatioStats stats;
    double run_min = 0.0, run_max = 0.0;
    bool have = false;
    for (double t = 1.0; t <= curve.times.back(); t *= 2.0) {
        const Vec2 p = curve.at(t);
        const double dx = p.x - origin.x;
        const double dy = p.y - origin.y;
        if (!(dx > 0.0)) {
            ++stats.skipped;
            continue;
        }
        const double ratio = dy / dx;
        if (!have) {
            run_min = run_max = ratio;
            have = true;
        } else {
            run_min = std::min(run_min, ratio);
            run_max = std::max(run_max, ratio);
        }
        stats.times.push_back(t);
        stats.ratio.push_back(ratio);
        stats.running_min.push_back(run_min);
        stats.running_max.push_back(run_max);
    }
    return stats;
}

}  // namespace channelfield
