#pragma once

#include <array>
#include <vector>

#include "channelfield/tessellation.hpp"

namespace channelfield {

// Smooth probability density on the square [-1/3,0]^2: the product of two
// rescaled standard bumps b(t) = exp(-1/(1-t^2)). The smoothed field
// v = rho * v~ averages the raw field over x + [-1/3,0]^2.
//
// Because v~ is piecewise constant on an arrangement of axis rectangles, the
// convolution is evaluated exactly: the support square is tiled by the
// domain edges that cross it, each tile weighted by a product of 1-D bump
// CDF differences. That keeps v smooth in x and makes v1+v2 = 1 exact; the
// `order` parameter only controls the resolution of the tabulated CDF.
class Mollifier {
  public:
    explicit Mollifier(int order = 32);

    int order() const { return order_; }

    // Density value c * b(6u1+1) * b(6u2+1); zero outside the support.
    double rho(Vec2 u) const;

    // Normalization constant c making rho integrate to one.
    double normalization() const;

    // Normalized 1-D cumulative of the bump profile over [-1/3, t].
    double cumulative(double t) const;

    // Smoothed field at x; requires x + [-1/3,0]^2 inside the validity
    // window (throws OutOfWindowError otherwise).
    std::array<double, 2> v_at(Vec2 x, const TessellationView& view) const;

  private:
    int order_;
    double knot_step_;
    double norm_1d_;                 // integral of the 1-D profile
    std::vector<double> cum_;        // cumulative at knots, normalized
    std::vector<double> deriv_;      // normalized profile at knots
    std::vector<double> deriv2_;     // its derivative at knots
};

inline constexpr double kMollifierSupport = 1.0 / 3.0;

}  // namespace channelfield
