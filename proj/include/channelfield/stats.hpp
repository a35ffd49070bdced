#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace channelfield {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

MeanSE mean_se(std::span<const double> xs);

// One-sample two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic two-sided critical value at significance `level` (default 1%).
double ks_critical(std::size_t n, double level = 0.01);

// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

double ks_pvalue(double d, std::size_t n);

// Chi-square goodness of fit. Bins with expected count < min_expected are
// merged into their right neighbour (the final bin absorbs leftovers).
struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};
ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected,
                               double min_expected = 5.0);

// Poisson goodness of fit for integer counts with mean `mean`: bins
// 0,1,...,k_max with a merged tail.
ChiSquareResult poisson_gof(std::span<const std::size_t> counts, double mean);

// Two-sided binomial fairness z-test (continuity corrected); returns z.
double binomial_two_sided_z(std::size_t successes, std::size_t n);

double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

// z-statistic for H0: correlation = 0 (Fisher transform).
double correlation_z(double corr, std::size_t n);

double spearman_correlation(std::span<const double> xs, std::span<const double> ys);

// Exponential rate MLE under right censoring: rate = events / total time,
// se = rate / sqrt(events).
struct CensoredRate {
    double rate = 0.0;
    double se = 0.0;
    std::size_t events = 0;
};
CensoredRate censored_exp_rate(std::span<const double> times,
                               std::span<const char> censored);

// Probability-integral transform for right-censored exponential data:
// maps each uncensored observation t with censoring bound c to
// (1-e^{-rate t})/(1-e^{-rate c}), which is U(0,1) under the null.
std::vector<double> censored_exp_pit(std::span<const double> times,
                                     std::span<const char> censored,
                                     std::span<const double> bounds, double rate);

double quantile(std::vector<double> xs, double q);

}  // namespace channelfield
