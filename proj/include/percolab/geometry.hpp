#pragma once

#include <cmath>

namespace percolab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist2(Point a, Point b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

// Axis-aligned rectangle stored as center + extents. Squares Q(z,R) are the
// width == height == R case.
struct RectRegion {
    Point center;
    double width = 0.0;
    double height = 0.0;

    double x0() const { return center.x - 0.5 * width; }
    double x1() const { return center.x + 0.5 * width; }
    double y0() const { return center.y - 0.5 * height; }
    double y1() const { return center.y + 0.5 * height; }
    double area() const { return width * height; }

    static RectRegion square(Point z, double side) { return {z, side, side}; }
    static RectRegion from_corner(double x0, double y0, double w, double h) {
        return {{x0 + 0.5 * w, y0 + 0.5 * h}, w, h};
    }

    bool valid() const { return width > 0.0 && height > 0.0; }

    bool contains(Point p, double eps = 0.0) const {
        return p.x >= x0() - eps && p.x <= x1() + eps && p.y >= y0() - eps &&
               p.y <= y1() + eps;
    }

    bool contains_rect(const RectRegion& r, double eps = 0.0) const {
        return r.x0() >= x0() - eps && r.x1() <= x1() + eps &&
               r.y0() >= y0() - eps && r.y1() <= y1() + eps;
    }

    bool contains_disk(Point z, double rho, double eps = 0.0) const {
        return z.x - rho >= x0() - eps && z.x + rho <= x1() + eps &&
               z.y - rho >= y0() - eps && z.y + rho <= y1() + eps;
    }
};

struct AnnulusRegion {
    Point center;
    double r_in = 0.0;
    double r_out = 0.0;

    bool valid() const { return r_in > 0.0 && r_in < r_out; }
};

enum class Color : unsigned char { Yellow = 0, Blue = 1 };

inline Color opposite(Color c) {
    return c == Color::Blue ? Color::Yellow : Color::Blue;
}

enum class Side { Left, Right, Bottom, Top };

enum class Direction { Horizontal, Vertical };

} // namespace percolab
