#pragma once

#include <functional>
#include <span>
#include <vector>

#include "channelfield/chains.hpp"
#include "channelfield/stats.hpp"

namespace channelfield {

// Analytic bound on the mass of points whose domain can meet both an N-box
// at the origin and one shifted by z1 (regime z1 > 4N):
// (N+1) int_1^inf (alpha/xi^alpha) e^{-(z1-2N)/xi} dxi.
double overlap_bound(double n_box, double z1, double alpha);

using Observable = std::function<double(const TessellationView&, Vec2)>;

// Indicator that the winning domain at x points along e1 (0 at Theta).
double sigma_indicator(const TessellationView& view, Vec2 x);

struct MixingReport {
    std::vector<Vec2> lags;             // sorted by l1 norm
    std::vector<double> covariance;
    std::vector<double> covariance_se;
    std::vector<double> analytic_bounds;
    std::vector<double> overlap_mass;    // MC estimate of the overlap set mass
    std::vector<double> overlap_mass_se;
    std::size_t ensemble_size = 0;
    double n_box = 1.0;
};

// Covariance of the observable between `base` and `base + lag` across an
// i.i.d. ensemble, plus the overlap-mass comparison for the same lags.
MixingReport empirical_mixing(std::span<const Configuration> ensemble,
                              const Observable& observable, Vec2 base,
                              std::span<const Vec2> lags, double n_box = 1.0);

// Marked box for the post-stopping count tests: spatial rectangle relative
// to the stopping coordinate plus a direction tag; expected Poisson mean is
// area/2. Boxes must sit inside the up-right half plane {x1>0 or x2>0}.
struct MarkBox {
    Rect rect;
    std::uint8_t sigma = 1;
};

struct StrongMarkovReport {
    std::size_t events = 0;
    std::vector<ChiSquareResult> box_tests;
    double pre_post_correlation = 0.0;
    double correlation_z = 0.0;
};

// Runs the chain construction on every configuration; on the accepted
// complete-blocking events (with the blocking abscissa before censor_x) the
// counts of points in the boxes shifted by the stopping coordinate are
// tested against their unconditional Poisson law, and the post-stopping
// total is correlated against the pre-stopping point count.
StrongMarkovReport strong_markov_test(std::span<const Configuration> ensemble,
                                      Vec2 y, std::span<const MarkBox> boxes,
                                      double censor_x);

}  // namespace channelfield
