#include "channelfield/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "channelfield/quadrature.hpp"

namespace channelfield {

namespace {

double bump(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double bump_deriv(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    const double d = 1.0 - t * t;
    return bump(t) * (-2.0 * t / (d * d));
}

// Profile along one axis of the support interval [-1/3, 0].
double profile(double u) { return bump(6.0 * u + 1.0); }
double profile_deriv(double u) { return 6.0 * bump_deriv(6.0 * u + 1.0); }

}  // namespace

Mollifier::Mollifier(int order) : order_(std::max(order, 4)) {
    const int knots = 8 * order_;  // table resolution scales with the order
    const double lo = -kMollifierSupport;
    knot_step_ = kMollifierSupport / knots;
    const QuadRule rule = gauss_legendre(20);

    std::vector<double> raw(knots + 1, 0.0);
    for (int i = 0; i < knots; ++i) {
        const double a = lo + i * knot_step_;
        raw[i + 1] = raw[i] + quad_fixed(profile, a, a + knot_step_, rule);
    }
    norm_1d_ = raw[knots];

    cum_.resize(knots + 1);
    deriv_.resize(knots + 1);
    deriv2_.resize(knots + 1);
    for (int i = 0; i <= knots; ++i) {
        const double u = lo + i * knot_step_;
        cum_[i] = raw[i] / norm_1d_;
        deriv_[i] = profile(u) / norm_1d_;
        deriv2_[i] = profile_deriv(u) / norm_1d_;
    }
    cum_.front() = 0.0;
    cum_.back() = 1.0;
}

double Mollifier::normalization() const { return 1.0 / (norm_1d_ * norm_1d_); }

double Mollifier::rho(Vec2 u) const {
    return normalization() * profile(u.x) * profile(u.y);
}

double Mollifier::cumulative(double t) const {
    if (t <= -kMollifierSupport) return 0.0;
    if (t >= 0.0) return 1.0;
    const double s = (t + kMollifierSupport) / knot_step_;
    const int i = std::min(static_cast<int>(s), static_cast<int>(cum_.size()) - 2);
    const double h = knot_step_;
    const double x = (s - i) * h;  // offset within [0, h]
    // Quintic Hermite from (value, first, second derivative) at both knots.
    const double f0 = cum_[i], f1 = cum_[i + 1];
    const double d0 = deriv_[i], d1 = deriv_[i + 1];
    const double s0 = deriv2_[i], s1 = deriv2_[i + 1];
    const double tt = x / h;
    const double t2 = tt * tt, t3 = t2 * tt, t4 = t3 * tt, t5 = t4 * tt;
    const double h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    const double h10 = tt - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    const double h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    const double h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    const double h21 = 0.5 * t3 - t4 + 0.5 * t5;
    return std::clamp(h00 * f0 + h10 * h * d0 + h20 * h * h * s0 + h01 * f1 +
                          h11 * h * d1 + h21 * h * h * s1,
                      0.0, 1.0);
}

std::array<double, 2> Mollifier::v_at(Vec2 x, const TessellationView& view) const {
    const Rect square{x.x - kMollifierSupport, x.y - kMollifierSupport, x.x, x.y};
    if (!view.window().contains(square))
        throw OutOfWindowError("v_at: support square leaves the validity window");

    std::vector<std::uint32_t> cands;
    view.gather_candidates(square, cands);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    // Tile the support square by the candidate domain edges crossing it;
    // v~ is constant on each tile. Breakpoints live in the u frame so the
    // per-axis masses telescope to exactly one.
    std::vector<double> ux{-kMollifierSupport, 0.0}, uy{-kMollifierSupport, 0.0};
    for (const auto idx : cands) {
        const Rect& r = view.domain_rect(static_cast<std::int32_t>(idx));
        for (const double e : {r.x0 - x.x, r.x1 - x.x})
            if (e > -kMollifierSupport && e < 0.0) ux.push_back(e);
        for (const double e : {r.y0 - x.y, r.y1 - x.y})
            if (e > -kMollifierSupport && e < 0.0) uy.push_back(e);
    }
    std::sort(ux.begin(), ux.end());
    std::sort(uy.begin(), uy.end());

    std::vector<double> mx(ux.size() - 1), my(uy.size() - 1);
    for (std::size_t i = 0; i + 1 < ux.size(); ++i)
        mx[i] = std::max(cumulative(ux[i + 1]) - cumulative(ux[i]), 0.0);
    for (std::size_t j = 0; j + 1 < uy.size(); ++j)
        my[j] = std::max(cumulative(uy[j + 1]) - cumulative(uy[j]), 0.0);

    double w1 = 0.0, w2 = 0.0, wt = 0.0, total = 0.0;
    for (std::size_t j = 0; j + 1 < uy.size(); ++j) {
        if (my[j] == 0.0) continue;
        const double cy = x.y + 0.5 * (uy[j] + uy[j + 1]);
        for (std::size_t i = 0; i + 1 < ux.size(); ++i) {
            if (mx[i] == 0.0) continue;
            const Vec2 center{x.x + 0.5 * (ux[i] + ux[i + 1]), cy};
            std::int32_t best = kTheta;
            double best_xi = 0.0;
            for (const auto idx : cands) {
                const std::int32_t d = static_cast<std::int32_t>(idx);
                if (view.domain_rect(d).contains(center) &&
                    view.point(d).xi > best_xi) {
                    best = d;
                    best_xi = view.point(d).xi;
                }
            }
            const double m = mx[i] * my[j];
            total += m;
            if (best == kTheta)
                wt += m;
            else if (view.point(best).sigma == 1)
                w1 += m;
            else
                w2 += m;
        }
    }
    if (total <= 0.0) return {0.5, 0.5};
    const double v1 = std::clamp((w1 + 0.5 * wt) / total, 0.0, 1.0);
    return {v1, 1.0 - v1};
}

}  // namespace channelfield
