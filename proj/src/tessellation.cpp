#include "channelfield/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace channelfield {

InfluenceDomain domain_of(const MarkedPoint& eta) {
    const double len = eta.r * eta.xi;
    Rect rect;
    if (eta.sigma == 1)
        rect = {eta.x.x, eta.x.y, eta.x.x + len, eta.x.y + 1.0};
    else
        rect = {eta.x.x, eta.x.y, eta.x.x + 1.0, eta.x.y + len};
    return {eta, rect};
}

TessellationView::TessellationView(Configuration config)
    : config_(std::move(config)) {
    const Rect& w = config_.window;
    ox_ = std::floor(w.x0);
    oy_ = std::floor(w.y0);
    nx_ = std::max(1, static_cast<int>(std::ceil(w.x1 - ox_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(w.y1 - oy_)));

    rects_.reserve(config_.points.size());
    for (const auto& p : config_.points) rects_.push_back(domain_of(p).rect);

    // CSR fill over the unit grid; domains are clipped to the window, so a
    // long channel costs one entry per crossed cell, not per unit of length.
    const std::size_t n_cells = static_cast<std::size_t>(nx_) * ny_;
    std::vector<std::uint32_t> counts(n_cells, 0);
    const auto visit_cells = [&](const Rect& r, auto&& fn) {
        const double cx0 = std::max(r.x0, w.x0), cx1 = std::min(r.x1, w.x1);
        const double cy0 = std::max(r.y0, w.y0), cy1 = std::min(r.y1, w.y1);
        if (cx0 > cx1 || cy0 > cy1) return;
        const int i0 = cell_of_x(cx0), i1 = cell_of_x(cx1);
        const int j0 = cell_of_y(cy0), j1 = cell_of_y(cy1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) fn(static_cast<std::size_t>(j) * nx_ + i);
    };
    for (const auto& r : rects_)
        visit_cells(r, [&](std::size_t c) { ++counts[c]; });
    cell_start_.assign(n_cells + 1, 0);
    for (std::size_t c = 0; c < n_cells; ++c)
        cell_start_[c + 1] = cell_start_[c] + counts[c];
    cell_items_.resize(cell_start_.back());
    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::uint32_t idx = 0; idx < rects_.size(); ++idx)
        visit_cells(rects_[idx], [&](std::size_t c) { cell_items_[cursor[c]++] = idx; });
}

int TessellationView::cell_of_x(double x) const {
    const int i = static_cast<int>(std::floor(x - ox_));
    return std::clamp(i, 0, nx_ - 1);
}

int TessellationView::cell_of_y(double y) const {
    const int j = static_cast<int>(std::floor(y - oy_));
    return std::clamp(j, 0, ny_ - 1);
}

void TessellationView::require_inside(const Rect& region) const {
    if (!config_.window.contains(region))
        throw OutOfWindowError("tessellation query outside the validity window");
}

bool TessellationView::better(std::int32_t challenger, std::int32_t incumbent) const {
    if (incumbent == kTheta) return true;
    const MarkedPoint& a = point(challenger);
    const MarkedPoint& b = point(incumbent);
    if (a.xi != b.xi) return a.xi > b.xi;
    ties_.fetch_add(1, std::memory_order_relaxed);
    if (a.x.x != b.x.x) return a.x.x > b.x.x;
    if (a.x.y != b.x.y) return a.x.y > b.x.y;
    return a.sigma > b.sigma;
}

std::int32_t TessellationView::phi_at(Vec2 x) const {
    if (!config_.window.contains(x))
        throw OutOfWindowError("phi_at: point outside the validity window");
    const std::size_t c =
        static_cast<std::size_t>(cell_of_y(x.y)) * nx_ + cell_of_x(x.x);
    std::int32_t best = kTheta;
    for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const std::int32_t idx = static_cast<std::int32_t>(cell_items_[k]);
        if (rects_[idx].contains(x) && (best == kTheta || idx != best) &&
            better(idx, best))
            best = idx;
    }
    return best;
}

std::array<double, 2> TessellationView::v_tilde_at(Vec2 x) const {
    const std::int32_t winner = phi_at(x);
    if (winner == kTheta) return {0.5, 0.5};
    return point(winner).sigma == 1 ? std::array<double, 2>{1.0, 0.0}
                                    : std::array<double, 2>{0.0, 1.0};
}

void TessellationView::gather_candidates(const Rect& region,
                                         std::vector<std::uint32_t>& out) const {
    const Rect& w = config_.window;
    const double cx0 = std::max(region.x0, w.x0), cx1 = std::min(region.x1, w.x1);
    const double cy0 = std::max(region.y0, w.y0), cy1 = std::min(region.y1, w.y1);
    if (cx0 > cx1 || cy0 > cy1) return;
    const int i0 = cell_of_x(cx0), i1 = cell_of_x(cx1);
    const int j0 = cell_of_y(cy0), j1 = cell_of_y(cy1);
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            const std::size_t c = static_cast<std::size_t>(j) * nx_ + i;
            out.insert(out.end(), cell_items_.begin() + cell_start_[c],
                       cell_items_.begin() + cell_start_[c + 1]);
        }
    }
}

std::pair<double, std::int32_t> TessellationView::max_xi_over(const Rect& region,
                                                              OpenSides open) const {
    require_inside(region);
    std::vector<std::uint32_t> cands;
    gather_candidates(region, cands);
    std::int32_t best = kTheta;
    for (const auto idxu : cands) {
        const std::int32_t idx = static_cast<std::int32_t>(idxu);
        if (idx == best) continue;
        if (intersects_open(rects_[idx], region, open) && better(idx, best))
            best = idx;
    }
    return {best == kTheta ? 0.0 : point(best).xi, best};
}

bool TessellationView::no_stronger(const Rect& region, double xi,
                                   OpenSides open) const {
    require_inside(region);
    std::vector<std::uint32_t> cands;
    gather_candidates(region, cands);
    for (const auto idxu : cands) {
        const std::int32_t idx = static_cast<std::int32_t>(idxu);
        if (point(idx).xi > xi && intersects_open(rects_[idx], region, open))
            return false;
    }
    return true;
}

bool TessellationView::region_constant(const Rect& region, std::int32_t eta_index,
                                       OpenSides open) const {
    require_inside(region);
    if (eta_index == kTheta || !rects_[eta_index].contains(region)) return false;
    return no_stronger(region, point(eta_index).xi, open);
}

void TessellationView::dump_index_json(std::ostream& os) const {
    nlohmann::json cells = nlohmann::json::array();
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const std::size_t c = static_cast<std::size_t>(j) * nx_ + i;
            const std::size_t n = cell_start_[c + 1] - cell_start_[c];
            if (n == 0) continue;
            cells.push_back({{"cell", {ox_ + i, oy_ + j}}, {"count", n}});
        }
    }
    nlohmann::json out = {{"grid_origin", {ox_, oy_}},
                          {"grid_shape", {nx_, ny_}},
                          {"domains", rects_.size()},
                          {"occupied_cells", cells}};
    os << out.dump(2) << '\n';
}

}  // namespace channelfield
