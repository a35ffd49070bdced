#include "channelfield/pointfield.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "channelfield/special.hpp"
#include <json.hpp>

namespace channelfield {

void IntensityParams::validate() const {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("IntensityParams: alpha must lie in (1,2)");
}

double intensity_density(const MarkedPoint& eta, const IntensityParams& params) {
    params.validate();
    if (eta.r < 0.0 || eta.xi < 1.0 || (eta.sigma != 1 && eta.sigma != 2))
        return 0.0;
    return 0.5 * params.alpha * std::exp(-eta.r) /
           std::pow(eta.xi, params.alpha + 1.0);
}

double channel_reach_integral(double c, double alpha) {
    if (c < 0.0) throw std::invalid_argument("channel_reach_integral: c >= 0");
    if (c == 0.0) return alpha / (alpha - 1.0);
    return alpha * std::pow(c, 1.0 - alpha) * gamma_lower(alpha - 1.0, c);
}

double mu_dinv_rect(const Rect& rect, const IntensityParams& params) {
    params.validate();
    if (!rect.nondegenerate())
        throw std::invalid_argument("mu_dinv_rect: rectangle must be nondegenerate");
    const double w = rect.width();
    const double h = rect.height();
    // Footprints inside the width-1 side margin hit the rectangle outright;
    // farther footprints need channel reach, which integrates to I(0).
    const double reach = channel_reach_integral(0.0, params.alpha);
    return 0.5 * (h + 1.0) * (w + reach) + 0.5 * (w + 1.0) * (h + reach);
}

double omitted_mass(const Rect& window, double pad, const IntensityParams& params) {
    params.validate();
    if (!window.nondegenerate())
        throw std::invalid_argument("omitted_mass: window must be nondegenerate");
    if (pad < 0.0) throw std::invalid_argument("omitted_mass: pad >= 0");
    const double bands = window.width() + window.height() + 2.0;
    return 0.5 * bands * channel_reach_integral(pad, params.alpha);
}

double truncation_pad(const Rect& window, double epsilon,
                      const IntensityParams& params) {
    params.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("truncation_pad: epsilon must lie in (0,1)");
    if (!window.nondegenerate())
        throw std::invalid_argument("truncation_pad: window must be nondegenerate");
    double lo = 0.0;
    double hi = 1.0;
    while (omitted_mass(window, hi, params) > epsilon) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e150) throw std::runtime_error("truncation_pad: no finite pad");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (omitted_mass(window, mid, params) > epsilon ? lo : hi) = mid;
    }
    return hi;
}

Configuration Configuration::manual(std::vector<MarkedPoint> pts, const Rect& window,
                                    double alpha) {
    Configuration c;
    c.points = std::move(pts);
    c.window = window;
    c.alpha = alpha;
    return c;
}

Configuration reflected(const Configuration& config) {
    Configuration r = config;
    r.window = {config.window.y0, config.window.x0, config.window.y1, config.window.x1};
    for (auto& p : r.points) {
        std::swap(p.x.x, p.x.y);
        p.sigma = (p.sigma == 1) ? 2 : 1;
    }
    return r;
}

Configuration sample_configuration(const Rect& window, double epsilon,
                                   const IntensityParams& params,
                                   std::uint64_t seed) {
    params.validate();
    if (!window.nondegenerate())
        throw std::invalid_argument("sample_configuration: window must be nondegenerate");
    const double pad = truncation_pad(window, epsilon, params);

    Configuration config;
    config.window = window;
    config.alpha = params.alpha;
    config.epsilon = epsilon;
    config.pad = pad;
    config.omitted_bound = omitted_mass(window, pad, params);
    config.seed = seed;

    const double w = window.width();
    const double h = window.height();
    const double reach0 = channel_reach_integral(0.0, params.alpha);

    // Footprints in the window (plus the width-1 margin below / to the left
    // for the perpendicular extent) always hit the window.
    {
        Philox rng(seed, 0);
        const auto n = rng.poisson(0.5 * w * (h + 1.0));
        for (std::uint64_t i = 0; i < n; ++i) {
            MarkedPoint p;
            p.x = {rng.uniform(window.x0, window.x1), rng.uniform(window.y0 - 1.0, window.y1)};
            p.r = rng.exp1();
            p.xi = rng.pareto(params.alpha);
            p.sigma = 1;
            config.points.push_back(p);
        }
    }
    {
        Philox rng(seed, 1);
        const auto n = rng.poisson(0.5 * (w + 1.0) * h);
        for (std::uint64_t i = 0; i < n; ++i) {
            MarkedPoint p;
            p.x = {rng.uniform(window.x0 - 1.0, window.x1), rng.uniform(window.y0, window.y1)};
            p.r = rng.exp1();
            p.xi = rng.pareto(params.alpha);
            p.sigma = 2;
            config.points.push_back(p);
        }
    }

    // Far footprints whose channel bridges the gap u to the window edge.
    // Restricted to {r xi >= u}, the law factorizes: xi ~ Par(alpha-1),
    // u = xi Exp(1), r = u/xi + Exp(1); footprints beyond the pad are the
    // omitted tail accounted for by omitted_bound.
    {
        Philox rng(seed, 2);
        const auto n = rng.poisson(0.5 * (h + 1.0) * reach0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double xi = rng.pareto(params.alpha - 1.0);
            const double e1 = rng.exp1();
            const double y = rng.uniform(window.y0 - 1.0, window.y1);
            const double r = e1 + rng.exp1();
            const double u = xi * e1;
            if (u > pad) continue;
            config.points.push_back({{window.x0 - u, y}, r, xi, 1});
        }
    }
    {
        Philox rng(seed, 3);
        const auto n = rng.poisson(0.5 * (w + 1.0) * reach0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double xi = rng.pareto(params.alpha - 1.0);
            const double e1 = rng.exp1();
            const double x = rng.uniform(window.x0 - 1.0, window.x1);
            const double r = e1 + rng.exp1();
            const double u = xi * e1;
            if (u > pad) continue;
            config.points.push_back({{x, window.y0 - u}, r, xi, 2});
        }
    }
    return config;
}

void Configuration::write_jsonl(std::ostream& os) const {
    nlohmann::json header = {
        {"format", "channelfield-config"},
        {"version", 1},
        {"window", {window.x0, window.y0, window.x1, window.y1}},
        {"alpha", alpha},
        {"epsilon", epsilon},
        {"pad", pad},
        {"omitted_bound", omitted_bound},
        {"seed", seed},
    };
    os << header.dump() << '\n';
    for (const auto& p : points) {
        nlohmann::json line = {{"x", {p.x.x, p.x.y}},
                               {"r", p.r},
                               {"xi", p.xi},
                               {"sigma", static_cast<int>(p.sigma)}};
        os << line.dump() << '\n';
    }
}

Configuration Configuration::read_jsonl(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("Configuration: missing header line");
    const auto header = nlohmann::json::parse(line);
    if (header.at("format") != "channelfield-config" || header.at("version") != 1)
        throw std::runtime_error("Configuration: unsupported format/version");
    Configuration c;
    const auto& w = header.at("window");
    c.window = {w.at(0), w.at(1), w.at(2), w.at(3)};
    c.alpha = header.at("alpha");
    c.epsilon = header.at("epsilon");
    c.pad = header.value("pad", 0.0);
    c.omitted_bound = header.value("omitted_bound", 0.0);
    c.seed = header.at("seed");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        MarkedPoint p;
        p.x = {j.at("x").at(0), j.at("x").at(1)};
        p.r = j.at("r");
        p.xi = j.at("xi");
        p.sigma = static_cast<std::uint8_t>(j.at("sigma").get<int>());
        if ((p.sigma != 1 && p.sigma != 2) || p.r < 0.0 || p.xi < 1.0)
            throw std::runtime_error("Configuration: point outside support");
        c.points.push_back(p);
    }
    return c;
}

}  // namespace channelfield
