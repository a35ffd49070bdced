#include "channelfield/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "channelfield/special.hpp"

namespace channelfield {

MeanSE mean_se(std::span<const double> xs) {
    MeanSE r;
    r.n = xs.size();
    if (r.n == 0) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / static_cast<double>(r.n);
    if (r.n < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / (static_cast<double>(r.n) * (r.n - 1.0)));
    return r;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    return d;
}

double ks_critical(std::size_t n, double level) {
    return std::sqrt(-0.5 * std::log(level / 2.0)) / std::sqrt(static_cast<double>(n));
}

double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_q(d * (sn + 0.12 + 0.11 / sn));
}

ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected,
                               double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: shape mismatch");
    std::vector<double> obs, exp;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= min_expected) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0) {
        if (exp.empty()) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
        } else {
            obs.back() += o_acc;
            exp.back() += e_acc;
        }
    }
    ChiSquareResult r;
    if (exp.size() < 2) return r;  // nothing to test
    for (std::size_t i = 0; i < exp.size(); ++i)
        r.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    r.dof = exp.size() - 1;
    r.p_value = gamma_q(0.5 * r.dof, 0.5 * r.statistic);
    return r;
}

ChiSquareResult poisson_gof(std::span<const std::size_t> counts, double mean) {
    if (counts.empty()) throw std::invalid_argument("poisson_gof: empty");
    std::size_t k_max = 0;
    for (auto c : counts) k_max = std::max(k_max, c);
    std::vector<double> obs(k_max + 2, 0.0), exp(k_max + 2, 0.0);
    for (auto c : counts) obs[c] += 1.0;
    const double n = static_cast<double>(counts.size());
    double pk = std::exp(-mean);
    double tail = 1.0;
    for (std::size_t k = 0; k <= k_max; ++k) {
        exp[k] = n * pk;
        tail -= pk;
        pk *= mean / static_cast<double>(k + 1);
    }
    exp[k_max + 1] = n * std::max(tail, 0.0);
    return chi_square_gof(obs, exp);
}

double binomial_two_sided_z(std::size_t successes, std::size_t n) {
    if (n == 0) throw std::invalid_argument("binomial_two_sided_z: n = 0");
    const double dev =
        std::abs(static_cast<double>(successes) - 0.5 * static_cast<double>(n));
    const double corrected = std::max(dev - 0.5, 0.0);
    return corrected / std::sqrt(0.25 * static_cast<double>(n));
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("pearson_correlation: need matched n >= 3");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double correlation_z(double corr, std::size_t n) {
    if (n < 4) throw std::invalid_argument("correlation_z: n >= 4");
    const double c = std::clamp(corr, -0.999999, 0.999999);
    return 0.5 * std::log((1.0 + c) / (1.0 - c)) * std::sqrt(n - 3.0);
}

namespace {
std::vector<double> ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> r(xs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}
}  // namespace

double spearman_correlation(std::span<const double> xs, std::span<const double> ys) {
    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    return pearson_correlation(rx, ry);
}

CensoredRate censored_exp_rate(std::span<const double> times,
                               std::span<const char> censored) {
    if (times.size() != censored.size() || times.empty())
        throw std::invalid_argument("censored_exp_rate: shape mismatch");
    double total = 0.0;
    std::size_t events = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        total += times[i];
        if (!censored[i]) ++events;
    }
    CensoredRate r;
    r.events = events;
    if (events == 0 || total <= 0.0) return r;
    r.rate = static_cast<double>(events) / total;
    r.se = r.rate / std::sqrt(static_cast<double>(events));
    return r;
}

std::vector<double> censored_exp_pit(std::span<const double> times,
                                     std::span<const char> censored,
                                     std::span<const double> bounds, double rate) {
    if (times.size() != censored.size() || times.size() != bounds.size())
        throw std::invalid_argument("censored_exp_pit: shape mismatch");
    std::vector<double> u;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (censored[i]) continue;
        const double num = -std::expm1(-rate * times[i]);
        const double den = -std::expm1(-rate * bounds[i]);
        if (den > 0.0) u.push_back(num / den);
    }
    return u;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty");
    std::sort(xs.begin(), xs.end());
    const double pos = q * (xs.size() - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= xs.size()) return xs.back();
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

}  // namespace channelfield
