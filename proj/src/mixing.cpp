#include "channelfield/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace channelfield {

double overlap_bound(double n_box, double z1, double alpha) {
    if (!(n_box > 0.0)) throw std::invalid_argument("overlap_bound: N > 0");
    if (!(z1 > 4.0 * n_box))
        throw std::invalid_argument("overlap_bound: requires z1 > 4N");
    return (n_box + 1.0) * channel_reach_integral(z1 - 2.0 * n_box, alpha);
}

double sigma_indicator(const TessellationView& view, Vec2 x) {
    const std::int32_t w = view.phi_at(x);
    return (w != kTheta && view.point(w).sigma == 1) ? 1.0 : 0.0;
}

MixingReport empirical_mixing(std::span<const Configuration> ensemble,
                              const Observable& observable, Vec2 base,
                              std::span<const Vec2> lags, double n_box) {
    if (ensemble.size() < 100)
        throw std::invalid_argument("empirical_mixing: ensemble of >= 100 required");
    MixingReport report;
    report.ensemble_size = ensemble.size();
    report.n_box = n_box;
    report.lags.assign(lags.begin(), lags.end());
    std::sort(report.lags.begin(), report.lags.end(),
              [](Vec2 a, Vec2 b) { return l1_norm(a) < l1_norm(b); });

    const double alpha = ensemble.front().alpha;
    const std::size_t n = ensemble.size();
    const std::size_t k = report.lags.size();
    std::vector<double> g0(n);
    std::vector<std::vector<double>> gz(k, std::vector<double>(n));
    std::vector<std::vector<double>> overlap(k, std::vector<double>(n));

    const Rect box0{base.x - n_box, base.y - n_box, base.x + n_box, base.y + n_box};
    for (std::size_t c = 0; c < n; ++c) {
        const TessellationView view(ensemble[c]);
        g0[c] = observable(view, base);
        for (std::size_t l = 0; l < k; ++l) {
            const Vec2 z = report.lags[l];
            gz[l][c] = observable(view, base + z);
            const Rect boxz{box0.x0 + z.x, box0.y0 + z.y, box0.x1 + z.x,
                            box0.y1 + z.y};
            double count = 0.0;
            for (const auto& p : view.config().points) {
                const Rect d = domain_of(p).rect;
                if (d.intersects(box0) && d.intersects(boxz)) count += 1.0;
            }
            overlap[l][c] = count;
        }
    }

    const double m0 = mean_se(g0).mean;
    for (std::size_t l = 0; l < k; ++l) {
        const double mz = mean_se(gz[l]).mean;
        std::vector<double> prod(n);
        for (std::size_t c = 0; c < n; ++c)
            prod[c] = (g0[c] - m0) * (gz[l][c] - mz);
        const MeanSE cov = mean_se(prod);
        report.covariance.push_back(cov.mean);
        report.covariance_se.push_back(cov.se);
        const MeanSE om = mean_se(overlap[l]);
        report.overlap_mass.push_back(om.mean);
        report.overlap_mass_se.push_back(om.se);
        const double z1 = l1_norm(report.lags[l]);
        report.analytic_bounds.push_back(
            z1 > 4.0 * n_box ? overlap_bound(n_box, z1, alpha)
                             : std::numeric_limits<double>::infinity());
    }
    return report;
}

StrongMarkovReport strong_markov_test(std::span<const Configuration> ensemble,
                                      Vec2 y, std::span<const MarkBox> boxes,
                                      double censor_x) {
    for (const auto& b : boxes) {
        if (!(b.rect.x0 >= 0.0 || b.rect.y0 >= 0.0))
            throw std::invalid_argument(
                "strong_markov_test: boxes must sit in {x1>0 or x2>0}");
    }
    StrongMarkovReport report;
    std::vector<std::vector<std::size_t>> counts(boxes.size());
    std::vector<double> pre, post;

    for (const auto& config : ensemble) {
        const TessellationView view(config);
        const ChainRecord rec = detect_chain(y, view, 1);
        if (rec.b_flags.size() < 2 || !rec.b_flags[1]) continue;
        const double u_tilde = rec.U_tilde.at(0);
        if (u_tilde > censor_x) continue;
        const Vec2 t{u_tilde, rec.V.at(1)};

        double total = 0.0;
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            std::size_t c = 0;
            for (const auto& p : view.config().points) {
                if (p.sigma != boxes[b].sigma) continue;
                const Vec2 rel = p.x - t;
                if (rel.x > boxes[b].rect.x0 && rel.x <= boxes[b].rect.x1 &&
                    rel.y > boxes[b].rect.y0 && rel.y <= boxes[b].rect.y1)
                    ++c;
            }
            counts[b].push_back(c);
            total += static_cast<double>(c);
        }
        double pre_count = 0.0;
        for (const auto& p : view.config().points)
            if (preceq(p.x, t)) pre_count += 1.0;
        pre.push_back(pre_count);
        post.push_back(total);
        ++report.events;
    }

    for (std::size_t b = 0; b < boxes.size(); ++b) {
        const double mean = 0.5 * boxes[b].rect.area();
        report.box_tests.push_back(poisson_gof(counts[b], mean));
    }
    if (pre.size() >= 4) {
        report.pre_post_correlation = pearson_correlation(pre, post);
        report.correlation_z = correlation_z(report.pre_post_correlation, pre.size());
    }
    return report;
}

}  // namespace channelfield
