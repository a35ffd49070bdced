#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "channelfield/rng.hpp"

namespace channelfield {

// The strength-ratio law admits two exponent readings in the source
// material; Two matches the complete-blocking rate computation and is the
// default, One is kept behind this flag so the field-level consistency test
// can adjudicate empirically.
enum class KernelExponent : int { One = 1, Two = 2 };

// State of the strength/gap chain: live (zeta, e) or the cemetery.
struct ChainState {
    bool alive = true;
    double zeta = 1.0;
    double e = 0.0;

    static ChainState cemetery() { return {false, 0.0, 0.0}; }
};

struct RateTable {
    double alpha = 0.0;
    double zeta = 0.0;
    std::array<double, 4> lambda{};  // blocking classes 0..3
    double r_norm = 0.0;             // 1 / (sum lambda + 1/zeta)
};

// Blocking rate lambda_j(zeta), j in 0..3; lambda_3 is closed-form
// zeta^-alpha, the others are quadratures of their defining integrals.
double lambda_j(double zeta, int j, double alpha);

RateTable rate_table(double zeta, double alpha);

// Closed form of (sum_j lambda_j(zeta) + zeta^-1)^-1; the rate identity test
// ties it to the quadrature route.
double rate_normalizer(double zeta, double alpha);

// Splits the complete-blocking rate at strength a*zeta: (lambda0+, lambda0-).
std::pair<double, double> lambda0_split(double zeta, double a, double alpha);

// Tail of the successor-strength kernel: Q(zeta, [a zeta, inf)), a >= 1.
double q_tail(double zeta, double a, double alpha,
              KernelExponent k = KernelExponent::Two);

// Draws zeta' ~ Q(zeta, .) by numeric inversion of the tail (|cdf error|
// <= 1e-12, Newton with bisection fallback).
double sample_q(double zeta, double alpha, Philox& rng,
                KernelExponent k = KernelExponent::Two);

// CDF-matching transport chi = q_tail(zeta, zeta'/zeta)^{-1/(alpha-1)}:
// chi <= zeta'/zeta pathwise, and chi ~ Par(alpha-1) when zeta' ~ Q(zeta,.).
double couple_pareto(double zeta, double zeta_next, double alpha,
                     KernelExponent k = KernelExponent::Two);

// Exact conditional probability that the next blocking is complete:
// lambda_0 / (sum_j lambda_j + zeta^-1).
double exact_block_ratio(double zeta, double alpha);

// Smallest c1 on the grid with block ratio >= e^{-2/zeta}(1 - c1 zeta^{alpha-2}).
double c1_certificate(double alpha, std::span<const double> zeta_grid);

// Mass mu(Lambda) of the acceptance test region for direction 1|2 (the two
// are reflections of each other), and the acceptance mass e^{-mu(Lambda)}.
double g_region_mass(double zeta, int direction, double alpha);
double g_mass(double zeta, int direction, double alpha);

// Smallest c2 on the grid with mu(Lambda) <= c2 zeta^{1-alpha}.
double c2_certificate(double alpha, std::span<const double> zeta_grid);

// Survival-probability model p(zeta) for one more chain level.
using PModel = std::function<double(double)>;

PModel p_model_constant(double p);

// Monte Carlo lower-bound model e^{-2/zeta}(1-c1 zeta^{alpha-2})_+ E e^{-c2 W1^{1-alpha}}.
double p_lower(double zeta, double c1, double c2, double alpha, int mc_samples,
               Philox& rng, KernelExponent k = KernelExponent::Two);
PModel p_model_lower_bound(double c1, double c2, double alpha, int mc_samples,
                           std::uint64_t seed,
                           KernelExponent k = KernelExponent::Two);

// Default model: exact_block_ratio(zeta) * E[g_mass(zeta')] with zeta' ~
// Q(zeta,.), precomputed by nested Monte Carlo on a log grid and linearly
// interpolated in log zeta. Thread-safe after construction.
PModel p_model_exact(double alpha, std::uint64_t seed, int grid_points = 48,
                     int mc_samples = 4000,
                     KernelExponent k = KernelExponent::Two);

// One transition of the chain (zeta,e) under the kernel: dies with
// probability 1 - p(zeta), otherwise zeta' ~ Q(zeta,.), e' ~ Exp(1).
ChainState transition_sample(const ChainState& state, const PModel& p_model,
                             double alpha, Philox& rng,
                             KernelExponent k = KernelExponent::Two);

struct SurvivalEstimate {
    double value = 0.0;
    double se = 0.0;
};

// Monte Carlo estimate of E prod_{j<n_trunc} p(W_j) along the free
// Q-chain from zeta (the truncated survival probability h_n(zeta)).
SurvivalEstimate survival_estimate(double zeta, int n_trunc, int n_paths,
                                   const PModel& p_model, double alpha,
                                   Philox& rng,
                                   KernelExponent k = KernelExponent::Two);

// Oscillation statistic path: F_m and its running minimum for m = 1..m_max,
// driven by i.i.d. Par(alpha-1) ratios and Exp(1) gaps (log-domain
// accumulation, so deep paths do not overflow).
struct OscillationPath {
    std::vector<double> F;
    std::vector<double> running_min;
};

OscillationPath simulate_F(int m_max, double alpha, Philox& rng);

}  // namespace channelfield
