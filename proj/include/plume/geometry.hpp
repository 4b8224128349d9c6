#pragma once

#include <algorithm>
#include <cmath>

namespace plume {

/// 2-D point/vector in meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Axis-aligned rectangle, lo <= hi componentwise.
struct Rect {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }

    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }

    Vec2 clamp(const Vec2& p) const {
        return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)};
    }

    Rect expanded(double m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }

    Rect intersect(const Rect& o) const {
        return {{std::max(lo.x, o.lo.x), std::max(lo.y, o.lo.y)},
                {std::min(hi.x, o.hi.x), std::min(hi.y, o.hi.y)}};
    }
};

inline double deg_to_rad(double deg) { return deg * (3.141592653589793238462643383279502884 / 180.0); }

/// Unit vector for a heading in degrees measured from the +x axis.
inline Vec2 heading_dir(double deg) {
    const double r = deg_to_rad(deg);
    return {std::cos(r), std::sin(r)};
}

/// Normalize an angle in degrees to [0, 360).
inline double normalize_deg(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

}  // namespace plume
