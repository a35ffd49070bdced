#pragma once

#include <algorithm>
#include <cmath>

namespace channelfield {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double l1_norm(Vec2 a) { return std::abs(a.x) + std::abs(a.y); }

// Componentwise partial order x ⪯ y.
inline bool preceq(Vec2 a, Vec2 b) { return a.x <= b.x && a.y <= b.y; }

// Closed axis-aligned rectangle [x0,x1] x [y0,y1]. Degenerate rectangles
// (zero width and/or height, i.e. segments and points) are allowed.
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool valid() const { return x0 <= x1 && y0 <= y1; }
    bool nondegenerate() const { return x0 < x1 && y0 < y1; }

    bool contains(Vec2 p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    bool contains(const Rect& r) const {
        return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
    }
    bool intersects(const Rect& r) const {
        return x0 <= r.x1 && r.x0 <= x1 && y0 <= r.y1 && r.y0 <= y1;
    }
    friend bool operator==(const Rect& a, const Rect& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

// Per-side openness of a query region; an open side excludes its boundary.
struct OpenSides {
    bool x_lo = false, x_hi = false, y_lo = false, y_hi = false;
};

// Does the closed rectangle `dom` meet the region `r` with sides opened
// per `open`?  Empty-interior regions behave as expected: a side opened
// on a degenerate axis makes the region empty.
inline bool intersects_open(const Rect& dom, const Rect& r, OpenSides open) {
    const bool x_ok = (open.x_lo ? dom.x1 > r.x0 : dom.x1 >= r.x0) &&
                      (open.x_hi ? dom.x0 < r.x1 : dom.x0 <= r.x1);
    const bool y_ok = (open.y_lo ? dom.y1 > r.y0 : dom.y1 >= r.y0) &&
                      (open.y_hi ? dom.y0 < r.y1 : dom.y0 <= r.y1);
    return x_ok && y_ok;
}

}  // namespace channelfield
