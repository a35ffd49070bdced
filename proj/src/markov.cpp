#include "channelfield/markov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "channelfield/quadrature.hpp"
#include "channelfield/special.hpp"

namespace channelfield {

namespace {

void check_zeta(double zeta) {
    if (!(zeta >= 1.0)) throw std::invalid_argument("zeta must be >= 1");
}

void check_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("alpha must lie in (1,2)");
}

// int_T^inf (alpha/xi^alpha) e^{-c/xi} dxi by termwise expansion of the
// exponential; valid once T >> c.
double tail_series_single(double T, double alpha, double c) {
    double sum = 0.0;
    double num = 1.0;  // (-c)^k / k!
    for (int k = 0; k < 24; ++k) {
        if (k > 0) num *= -c / k;
        const double term = num * std::pow(T, 1.0 - alpha - k) / (alpha + k - 1.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && k > 2) break;
    }
    return alpha * sum;
}

// Same for the positive difference integrand e^{-c1/xi} - e^{-c2/xi}, c1 < c2.
double tail_series_diff(double T, double alpha, double c1, double c2) {
    double sum = 0.0;
    double p1 = 1.0, p2 = 1.0, fact = 1.0;
    for (int k = 0; k < 24; ++k) {
        if (k > 0) {
            p1 *= -c1;
            p2 *= -c2;
            fact *= k;
        }
        const double term =
            (p1 - p2) / fact * std::pow(T, 1.0 - alpha - k) / (alpha + k - 1.0);
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300) && k > 2) break;
    }
    return alpha * sum;
}

// int_zeta^inf (alpha/xi^alpha) (e^{-c1/xi} - e^{-c2/xi}) dxi with c1 < c2:
// adaptive quadrature up to T, analytic series beyond (the integrand decays
// only algebraically, so the tail must be handled in closed form).
double xi_tail_diff(double zeta, double alpha, double c1, double c2) {
    const double T = std::max({zeta, 40.0 * c2, 40.0});
    double head = 0.0;
    if (T > zeta) {
        head = quad_adaptive(
            [&](double xi) {
                const double w = alpha * std::pow(xi, -alpha);
                const double e1 = c1 == 0.0 ? 1.0 : std::exp(-c1 / xi);
                return w * (e1 - std::exp(-c2 / xi));
            },
            zeta, T, 1e-12);
    }
    return head + tail_series_diff(T, alpha, c1, c2);
}

// int_zeta^inf (alpha/xi^alpha) e^{-c/xi} dxi.
double xi_tail(double zeta, double alpha, double c) {
    if (c == 0.0) return alpha / (alpha - 1.0) * std::pow(zeta, 1.0 - alpha);
    const double T = std::max({zeta, 40.0 * c, 40.0});
    double head = 0.0;
    if (T > zeta) {
        head = quad_adaptive(
            [&](double xi) {
                return alpha * std::pow(xi, -alpha) * std::exp(-c / xi);
            },
            zeta, T, 1e-12);
    }
    return head + tail_series_single(T, alpha, c);
}

}  // namespace

double lambda_j(double zeta, int j, double alpha) {
    check_zeta(zeta);
    check_alpha(alpha);
    switch (j) {
        case 0:
            return 0.5 * xi_tail(zeta, alpha, 2.0);
        case 1:
            return 0.5 * xi_tail_diff(zeta, alpha, 1.0, 2.0);
        case 2:
            return 0.5 * xi_tail_diff(zeta, alpha, 0.0, 1.0) +
                   0.5 * std::pow(zeta, -alpha);
        case 3:
            return std::pow(zeta, -alpha);
        default:
            throw std::invalid_argument("lambda_j: j in 0..3");
    }
}

RateTable rate_table(double zeta, double alpha) {
    RateTable t;
    t.alpha = alpha;
    t.zeta = zeta;
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
        t.lambda[j] = lambda_j(zeta, j, alpha);
        sum += t.lambda[j];
    }
    t.r_norm = 1.0 / (sum + 1.0 / zeta);
    return t;
}

double rate_normalizer(double zeta, double alpha) {
    check_zeta(zeta);
    check_alpha(alpha);
    const double sum = alpha / (2.0 * (alpha - 1.0)) * std::pow(zeta, 1.0 - alpha) +
                       1.5 * std::pow(zeta, -alpha);
    return 1.0 / (sum + 1.0 / zeta);
}

std::pair<double, double> lambda0_split(double zeta, double a, double alpha) {
    check_zeta(zeta);
    check_alpha(alpha);
    if (!(a > 1.0)) throw std::invalid_argument("lambda0_split: a > 1");
    const double plus = 0.5 * xi_tail(a * zeta, alpha, 2.0);
    // Near a = 1 the difference of tails cancels badly; integrate the short
    // interval directly there instead.
    const double minus =
        a < 4.0 ? 0.5 * quad_adaptive(
                            [&](double xi) {
                                return alpha * std::pow(xi, -alpha) *
                                       std::exp(-2.0 / xi);
                            },
                            zeta, a * zeta, 1e-12)
                : 0.5 * xi_tail(zeta, alpha, 2.0) - plus;
    return {plus, minus};
}

double q_tail(double zeta, double a, double alpha, KernelExponent k) {
    check_zeta(zeta);
    check_alpha(alpha);
    if (!(a >= 1.0)) throw std::invalid_argument("q_tail: a >= 1");
    const double c = static_cast<double>(k);
    return gamma_p(alpha - 1.0, c / (a * zeta)) / gamma_p(alpha - 1.0, c / zeta);
}

double sample_q(double zeta, double alpha, Philox& rng, KernelExponent k) {
    check_zeta(zeta);
    check_alpha(alpha);
    const double c = static_cast<double>(k);
    const double a_par = alpha - 1.0;
    const double w_hi = c / zeta;
    const double den = gamma_p(a_par, w_hi);
    const double u = rng.u01();
    const double target = u * den;  // solve gamma_p(a_par, w) = target, w in (0, w_hi]

    // Small-w asymptote gamma_p ~ w^a / (a Gamma(a)) seeds Newton.
    double w = std::exp((std::log(target) + std::lgamma(a_par + 1.0)) / a_par);
    w = std::clamp(w, 1e-300, w_hi);
    double lo = 0.0, hi = w_hi;
    for (int it = 0; it < 200; ++it) {
        const double f = gamma_p(a_par, w) - target;
        if (f > 0.0)
            hi = w;
        else
            lo = w;
        if (std::abs(f) <= 1e-12 * den) break;
        const double dpdw =
            std::exp((a_par - 1.0) * std::log(w) - w - std::lgamma(a_par));
        double next = w - f / dpdw;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        w = next;
    }
    return c / w;  // zeta' = a * zeta with w = c / (a zeta)
}

double couple_pareto(double zeta, double zeta_next, double alpha, KernelExponent k) {
    if (!(zeta_next >= zeta)) throw std::invalid_argument("couple_pareto: zeta' >= zeta");
    const double q = q_tail(zeta, zeta_next / zeta, alpha, k);
    return std::pow(q, -1.0 / (alpha - 1.0));
}

double exact_block_ratio(double zeta, double alpha) {
    const RateTable t = rate_table(zeta, alpha);
    return t.lambda[0] * t.r_norm;
}

double c1_certificate(double alpha, std::span<const double> zeta_grid) {
    double c1 = 0.0;
    for (const double z : zeta_grid) {
        const double ratio = exact_block_ratio(z, alpha);
        const double need = (1.0 - ratio * std::exp(2.0 / z)) * std::pow(z, 2.0 - alpha);
        c1 = std::max(c1, need);
    }
    return c1;
}

double g_region_mass(double zeta, int direction, double alpha) {
    check_zeta(zeta);
    check_alpha(alpha);
    if (direction != 1 && direction != 2)
        throw std::invalid_argument("g_region_mass: direction 1|2");
    // Same-direction strong points near the channel mouth, plus
    // perpendicular strong points whose channel reaches back into it; the
    // two directions are reflections with identical mass.
    const double near = 2.5 * std::pow(zeta, -alpha);
    const double deep = 0.5 * xi_tail(zeta, alpha, 0.0);
    return near + deep;
}

double g_mass(double zeta, int direction, double alpha) {
    return std::exp(-g_region_mass(zeta, direction, alpha));
}

double c2_certificate(double alpha, std::span<const double> zeta_grid) {
    double c2 = 0.0;
    for (const double z : zeta_grid)
        c2 = std::max(c2, g_region_mass(z, 1, alpha) * std::pow(z, alpha - 1.0));
    return c2;
}

PModel p_model_constant(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p in [0,1]");
    return [p](double) { return p; };
}

double p_lower(double zeta, double c1, double c2, double alpha, int mc_samples,
               Philox& rng, KernelExponent k) {
    check_zeta(zeta);
    check_alpha(alpha);
    if (!(c1 > 0.0 && c2 > 0.0))
        throw std::invalid_argument("p_lower: constants must be positive");
    const double front = std::exp(-2.0 / zeta) *
                         std::max(1.0 - c1 * std::pow(zeta, alpha - 2.0), 0.0);
    if (front == 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < mc_samples; ++i) {
        const double w1 = sample_q(zeta, alpha, rng, k);
        acc += std::exp(-c2 * std::pow(w1, 1.0 - alpha));
    }
    return std::clamp(front * acc / mc_samples, 0.0, 1.0);
}

PModel p_model_lower_bound(double c1, double c2, double alpha, int mc_samples,
                           std::uint64_t seed, KernelExponent k) {
    return [=](double zeta) {
        Philox rng(seed, 0x70);
        return p_lower(zeta, c1, c2, alpha, mc_samples, rng, k);
    };
}

PModel p_model_exact(double alpha, std::uint64_t seed, int grid_points,
                     int mc_samples, KernelExponent k) {
    check_alpha(alpha);
    auto log_zeta = std::make_shared<std::vector<double>>();
    auto p_val = std::make_shared<std::vector<double>>();
    const double log_max = std::log(1e8);
    for (int i = 0; i < grid_points; ++i) {
        const double lz = log_max * i / (grid_points - 1.0);
        const double zeta = std::exp(lz);
        Philox rng(seed, 0x100 + static_cast<std::uint64_t>(i));
        double acc = 0.0;
        for (int s = 0; s < mc_samples; ++s)
            acc += g_mass(sample_q(std::max(zeta, 1.0), alpha, rng, k), 1, alpha);
        log_zeta->push_back(lz);
        p_val->push_back(exact_block_ratio(std::max(zeta, 1.0), alpha) * acc /
                         mc_samples);
    }
    return [=](double zeta) {
        check_zeta(zeta);
        const double lz = std::log(zeta);
        const auto& xs = *log_zeta;
        const auto& ys = *p_val;
        if (lz >= xs.back()) return ys.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), lz);
        const std::size_t i = std::max<std::ptrdiff_t>(it - xs.begin() - 1, 0);
        const double t = (lz - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] * (1.0 - t) + ys[i + 1] * t;
    };
}

ChainState transition_sample(const ChainState& state, const PModel& p_model,
                             double alpha, Philox& rng, KernelExponent k) {
    if (!state.alive) return ChainState::cemetery();
    const double p = p_model(state.zeta);
    if (rng.u01() >= p) return ChainState::cemetery();
    ChainState next;
    next.zeta = sample_q(state.zeta, alpha, rng, k);
    next.e = rng.exp1();
    return next;
}

SurvivalEstimate survival_estimate(double zeta, int n_trunc, int n_paths,
                                   const PModel& p_model, double alpha,
                                   Philox& rng, KernelExponent k) {
    check_zeta(zeta);
    if (n_trunc < 1 || n_paths < 2)
        throw std::invalid_argument("survival_estimate: n_trunc >= 1, n_paths >= 2");
    double sum = 0.0, sum_sq = 0.0;
    for (int path = 0; path < n_paths; ++path) {
        double w = zeta;
        double prod = 1.0;
        for (int j = 0; j < n_trunc; ++j) {
            prod *= p_model(w);
            if (prod == 0.0) break;
            w = sample_q(w, alpha, rng, k);
        }
        sum += prod;
        sum_sq += prod * prod;
    }
    SurvivalEstimate est;
    est.value = sum / n_paths;
    const double var =
        std::max(sum_sq / n_paths - est.value * est.value, 0.0) / (n_paths - 1.0);
    est.se = std::sqrt(var);
    return est;
}

OscillationPath simulate_F(int m_max, double alpha, Philox& rng) {
    check_alpha(alpha);
    if (m_max < 1) throw std::invalid_argument("simulate_F: m_max >= 1");
    OscillationPath path;
    path.F.reserve(m_max);
    path.running_min.reserve(m_max);
    const double beta = alpha - 1.0;
    double log_pi = 0.0;       // log Pi_i, current product of ratios
    double log_sum = -1e300;   // log sum_i Pi_i^beta e_i
    double run_min = 1e300;
    for (int m = 1; m <= m_max; ++m) {
        for (int half = 0; half < 2; ++half) {
            const double e = rng.exp1();
            const double term = beta * log_pi + std::log(e);
            const double hi = std::max(log_sum, term);
            log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(term - hi));
            log_pi += std::log(rng.pareto(beta));
        }
        const double f = std::exp(log_sum - beta * log_pi);
        run_min = std::min(run_min, f);
        path.F.push_back(f);
        path.running_min.push_back(run_min);
    }
    return path;
}

}  // namespace channelfield
