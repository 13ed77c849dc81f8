#pragma once

#include <algorithm>
#include <cmath>

namespace semcloud {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 &operator+=(Vec2 o)
    {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2 &operator-=(Vec2 o)
    {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    Vec2 &operator*=(double s)
    {
        x *= s;
        y *= s;
        return *this;
    }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
    friend bool operator==(Vec2, Vec2) = default;

    double norm() const { return std::hypot(x, y); }
};

struct Size {
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
    friend bool operator==(Size, Size) = default;
};

/// Axis-aligned box described by its center.
struct Box {
    Vec2 center;
    Size size;

    double left() const { return center.x - size.w / 2; }
    double right() const { return center.x + size.w / 2; }
    double bottom() const { return center.y - size.h / 2; }
    double top() const { return center.y + size.h / 2; }
    double area() const { return size.area(); }
};

/// Penetration along x (positive when the projections intersect).
inline double x_overlap(const Box &a, const Box &b)
{
    return (a.size.w + b.size.w) / 2 - std::abs(a.center.x - b.center.x);
}

inline double y_overlap(const Box &a, const Box &b)
{
    return (a.size.h + b.size.h) / 2 - std::abs(a.center.y - b.center.y);
}

/// Depth by which two boxes interpenetrate; <= 0 when they are disjoint or touching.
inline double penetration(const Box &a, const Box &b)
{
    return std::min(x_overlap(a, b), y_overlap(a, b));
}

inline double overlap_area(const Box &a, const Box &b)
{
    const double ox = x_overlap(a, b);
    const double oy = y_overlap(a, b);
    if (ox <= 0 || oy <= 0)
        return 0.0;
    return std::min({ox, a.size.w, b.size.w}) * std::min({oy, a.size.h, b.size.h});
}

/// Minimum Euclidean distance between the two boxes, 0 when they intersect.
inline double gap_distance(const Box &a, const Box &b)
{
    const double gx = std::max(0.0, -x_overlap(a, b));
    const double gy = std::max(0.0, -y_overlap(a, b));
    return std::hypot(gx, gy);
}

struct Rect {
    double x = 0.0;  // min corner
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
};

}  // namespace semcloud
