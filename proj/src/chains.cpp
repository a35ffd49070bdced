#include "channelfield/chains.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "channelfield/markov.hpp"
#include <json.hpp>

namespace channelfield {

namespace {

// Orientation helper: `horizontal` refers to the channel currently being
// followed; axis is its direction, perp the width-1 direction.
struct Frame {
    bool horizontal = true;

    double axis(Vec2 p) const { return horizontal ? p.x : p.y; }
    double perp(Vec2 p) const { return horizontal ? p.y : p.x; }
    Rect rect(double a0, double a1, double p0, double p1) const {
        return horizontal ? Rect{a0, p0, a1, p1} : Rect{p0, a0, p1, a1};
    }
    double axis_hi(const Rect& w) const { return horizontal ? w.x1 : w.y1; }
    double perp_lo(const Rect& w) const { return horizontal ? w.y0 : w.x0; }
    double perp_hi(const Rect& w) const { return horizontal ? w.y1 : w.x1; }
    std::uint8_t perp_sigma() const { return horizontal ? 2 : 1; }
};

std::int32_t index_of(const TessellationView& view, const MarkedPoint& eta) {
    const auto& pts = view.config().points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (p.x == eta.x && p.r == eta.r && p.xi == eta.xi && p.sigma == eta.sigma)
            return static_cast<std::int32_t>(i);
    }
    throw std::invalid_argument("marked point not part of the configuration");
}

struct Blocker {
    std::int32_t idx = kTheta;
    double start = std::numeric_limits<double>::infinity();
};

// First domain stronger than xi_min whose coverage enters the strip
// [entry, scan_hi] x band, ordered by the axis coordinate of its base.
Blocker first_blocker(const TessellationView& view, const Frame& f, double entry,
                      double scan_hi, double band_lo, double band_hi,
                      double xi_min) {
    const Rect strip = f.rect(entry, scan_hi, band_lo, band_hi);
    std::vector<std::uint32_t> cands;
    view.gather_candidates(strip, cands);
    Blocker best;
    for (const auto idxu : cands) {
        const auto idx = static_cast<std::int32_t>(idxu);
        if (idx == best.idx) continue;
        const MarkedPoint& p = view.point(idx);
        if (!(p.xi > xi_min)) continue;
        if (!view.domain_rect(idx).intersects(strip)) continue;
        const double start = f.axis(p.x);
        if (start < best.start ||
            (start == best.start && f.perp(p.x) < f.perp(view.point(best.idx).x)))
            best = {idx, start};
    }
    return best;
}

}  // namespace

bool is_successor(const MarkedPoint& eta_i, const MarkedPoint& eta_j, double level,
                  const TessellationView& view) {
    const Frame f{eta_i.sigma == 1};
    const Rect di = domain_of(eta_i).rect;
    const double di_a0 = f.horizontal ? di.x0 : di.y0;
    const double di_a1 = f.horizontal ? di.x1 : di.y1;
    if (!(di_a0 <= level && level <= di_a1))
        throw std::invalid_argument("is_successor: D(eta_i) misses the level line");

    if (eta_j.sigma != f.perp_sigma() || !(eta_i.xi < eta_j.xi)) return false;

    const std::int32_t i_idx = index_of(view, eta_i);
    const std::int32_t j_idx = index_of(view, eta_j);
    const double perp_i = f.perp(eta_i.x);
    const double axis_j = f.axis(eta_j.x);

    // phi == eta_i on the level strip just below the level line.
    if (!view.region_constant(f.rect(level - 1.0, level, perp_i, perp_i + 1.0), i_idx))
        return false;
    // ... and strictly between the level line and the blocking coordinate.
    if (axis_j > level) {
        const OpenSides open = f.horizontal ? OpenSides{.x_lo = true, .x_hi = true}
                                            : OpenSides{.y_lo = true, .y_hi = true};
        if (!view.region_constant(f.rect(level, axis_j, perp_i, perp_i + 1.0), i_idx,
                                  open))
            return false;
    }
    // phi == eta_j on the widened blocking strip.
    return view.region_constant(
        f.rect(axis_j, axis_j + 1.0, perp_i - 1.0, perp_i + 1.0), j_idx);
}

ChainRecord detect_chain(Vec2 y, const TessellationView& view, int n_max) {
    if (n_max < 0) throw std::invalid_argument("detect_chain: n_max >= 0");
    ChainRecord rec;
    rec.y = y;
    const Rect& win = view.window();
    const Rect square{y.x - 1.0, y.y - 1.0, y.x, y.y};
    if (!win.contains(square))
        throw OutOfWindowError("detect_chain: start square outside the window");

    rec.U.push_back(y.x);
    rec.V.push_back(y.y);

    const std::int32_t k0 = view.phi_at(y);
    if (k0 == kTheta) {
        rec.b_flags.push_back(0);
        rec.a_flags.push_back(0);
        return rec;
    }
    const MarkedPoint p0 = view.point(k0);
    // The footprint constraint keeps the delta strip of the first recorded
    // successor pair inside channel 0, so accepted levels always satisfy
    // is_successor at the recorded coordinate.
    const bool b0 =
        p0.sigma == 1 && p0.x.x <= y.x - 1.0 && view.no_stronger(square, p0.xi);
    rec.b_flags.push_back(b0 ? 1 : 0);
    if (!b0) {
        rec.a_flags.push_back(0);
        return rec;
    }

    rec.levels.push_back(p0);
    const double v1 = p0.x.y + 1.0;
    rec.V.push_back(v1);
    rec.V_tilde.push_back(p0.x.y);

    rec.L.push_back((p0.x.x - y.x) / p0.xi + p0.r);
    rec.R.push_back(0.0);
    rec.e.push_back(0.0);

    const Rect a0_region{y.x - 1.0, y.y, y.x, v1};
    if (!win.contains(a0_region)) {
        rec.truncated = true;
        rec.a_flags.push_back(0);
        return rec;
    }
    const bool a0 = view.no_stronger(a0_region, p0.xi, {.y_lo = true});
    rec.a_flags.push_back(a0 ? 1 : 0);
    if (!a0) return rec;

    rec.terminal_level = 0;

    const double alpha = view.config().alpha;
    Frame f{true};
    MarkedPoint cur = p0;
    double entry = y.x;
    double band_lo = p0.x.y;
    double band_hi = v1;

    for (int n = 1; n <= n_max; ++n) {
        const double ch_end = f.axis(cur.x) + cur.r * cur.xi;
        const double axis_win_hi = f.axis_hi(win);
        if (band_lo < f.perp_lo(win) || band_hi > f.perp_hi(win) ||
            entry > axis_win_hi) {
            rec.truncated = true;
            break;
        }
        const double scan_hi = std::min(ch_end, axis_win_hi);
        const Blocker bl =
            first_blocker(view, f, entry, scan_hi, band_lo, band_hi, cur.xi);

        if (bl.idx == kTheta || bl.start >= ch_end) {
            if (ch_end > axis_win_hi) {
                rec.truncated = true;  // channel outruns the window undecided
            } else {
                (f.horizontal ? rec.U_tilde : rec.V_tilde).push_back(ch_end);
                rec.b_flags.push_back(0);
                rec.a_flags.push_back(0);
            }
            break;
        }

        double s_tilde = bl.start;
        if (s_tilde < entry) {
            ++rec.anomalies;
            s_tilde = entry;
        }
        const MarkedPoint bp = view.point(bl.idx);
        (f.horizontal ? rec.U_tilde : rec.V_tilde).push_back(s_tilde);

        const bool b_ok = bp.sigma == f.perp_sigma() &&
                          f.perp(bp.x) <= band_hi - 2.0 &&
                          f.perp(bp.x) + bp.r * bp.xi >= band_hi;
        rec.b_flags.push_back(b_ok ? 1 : 0);
        if (!b_ok) {
            rec.a_flags.push_back(0);
            break;
        }
        rec.levels.push_back(bp);
        (f.horizontal ? rec.U : rec.V).push_back(s_tilde + 1.0);
        rec.L.push_back((f.perp(bp.x) - band_hi) / bp.xi + bp.r);
        rec.R.push_back(s_tilde - entry);
        rec.e.push_back((s_tilde - entry) / rate_normalizer(cur.xi, alpha));

        // Dominance test on the shifted quadrant: strong points with
        // footprint up-right of the stopping coordinate must not reach the
        // widened entry strip of the new channel.
        const Rect g_region = f.rect(s_tilde, s_tilde + 1.0, band_hi - 2.0, band_hi);
        const OpenSides g_open = f.horizontal ? OpenSides{.x_lo = true}
                                              : OpenSides{.y_lo = true};
        if (!win.contains(g_region)) {
            rec.truncated = true;
            rec.a_flags.push_back(0);
            break;
        }
        bool g_ok = true;
        {
            std::vector<std::uint32_t> cands;
            view.gather_candidates(g_region, cands);
            for (const auto idxu : cands) {
                const auto idx = static_cast<std::int32_t>(idxu);
                const MarkedPoint& q = view.point(idx);
                if (!(q.xi > bp.xi)) continue;
                const bool in_h = f.axis(q.x) > s_tilde || f.perp(q.x) > band_hi;
                if (!in_h) continue;
                if (intersects_open(view.domain_rect(idx), g_region, g_open)) {
                    g_ok = false;
                    break;
                }
            }
        }
        rec.a_flags.push_back(g_ok ? 1 : 0);
        if (!g_ok) break;

        rec.terminal_level = n;
        rec.pair_levels.push_back(entry);

        cur = bp;
        entry = band_hi;
        band_lo = s_tilde;
        band_hi = s_tilde + 1.0;
        f.horizontal = !f.horizontal;
    }
    return rec;
}

double residual_length(const ChainRecord& chain, int n) {
    if (n < 0 || n >= static_cast<int>(chain.a_flags.size()) || !chain.a_flags[n])
        throw std::invalid_argument("residual_length: level not accepted");
    return chain.L[static_cast<std::size_t>(n)];
}

BlockingTimes blocking_times(const ChainRecord& chain, int n,
                             const TessellationView& view) {
    if (n < 0 || n >= static_cast<int>(chain.a_flags.size()) || !chain.a_flags[n])
        throw std::invalid_argument("blocking_times: level not accepted");
    const Frame f{n % 2 == 0};
    Vec2 z;
    if (n % 2 == 0) {
        const std::size_t m = static_cast<std::size_t>(n) / 2;
        z = {chain.U[m], chain.V[m + 1]};
    } else {
        const std::size_t m = (static_cast<std::size_t>(n) + 1) / 2;
        z = {chain.U[m], chain.V[m]};
    }
    const double zeta = chain.levels[static_cast<std::size_t>(n)].xi;
    const Rect& win = view.window();

    BlockingTimes bt;
    bt.censor_bound = f.axis_hi(win) - f.axis(z);
    bt.channel_rest = zeta * chain.L[static_cast<std::size_t>(n)];
    bt.complete = f.perp(z) - 2.0 >= f.perp_lo(win) && bt.censor_bound > 0.0;
    std::array<double, 4> first{};
    first.fill(std::numeric_limits<double>::infinity());

    for (const auto& p : view.config().points) {
        if (!(p.xi > zeta)) continue;
        const double u = f.axis(p.x) - f.axis(z);
        if (!(u > 0.0)) continue;
        const double w = f.perp(p.x) - f.perp(z);
        const double reach = w + p.r * p.xi;
        int cls = -1;
        if (p.sigma == f.perp_sigma()) {
            if (w <= -2.0 && reach >= 0.0)
                cls = 0;
            else if (w <= -2.0 && reach > -1.0 && reach < 0.0)
                cls = 1;
            else if (w > -2.0 && w < 0.0 && reach >= -1.0)
                cls = 2;
        } else if (w >= -2.0 && w <= 0.0) {
            cls = 3;
        }
        if (cls >= 0) first[cls] = std::min(first[cls], u);
    }
    for (int j = 0; j < 4; ++j) {
        if (first[j] <= bt.censor_bound) {
            bt.tau[j] = first[j];
            bt.censored[j] = 0;
        } else {
            bt.tau[j] = bt.censor_bound;
            bt.censored[j] = 1;
        }
    }
    return bt;
}

ChainRecord reflect(const ChainRecord& record) {
    ChainRecord r = record;
    std::swap(r.y.x, r.y.y);
    std::swap(r.U, r.V);
    std::swap(r.U_tilde, r.V_tilde);
    for (auto& p : r.levels) {
        std::swap(p.x.x, p.x.y);
        p.sigma = (p.sigma == 1) ? 2 : 1;
    }
    return r;
}

void ChainRecord::write_json(std::ostream& os) const {
    nlohmann::json levels_json = nlohmann::json::array();
    for (const auto& p : levels)
        levels_json.push_back({{"x", {p.x.x, p.x.y}},
                               {"r", p.r},
                               {"xi", p.xi},
                               {"sigma", static_cast<int>(p.sigma)}});
    nlohmann::json j = {{"y", {y.x, y.y}},
                        {"levels", levels_json},
                        {"U", U},
                        {"V", V},
                        {"U_tilde", U_tilde},
                        {"V_tilde", V_tilde},
                        {"L", L},
                        {"R", R},
                        {"e", e},
                        {"b_flags", b_flags},
                        {"a_flags", a_flags},
                        {"pair_levels", pair_levels},
                        {"terminal_level", terminal_level},
                        {"truncated", truncated},
                        {"anomalies", anomalies}};
    os << j.dump(2) << '\n';
}

}  // namespace channelfield
