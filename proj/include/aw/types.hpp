#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace aw {

// Project-wide error categories. ConfigError and SolveError map onto the
// CLI exit codes 2 and 3; everything else is a plain Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MeshError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct SolveError : Error {
    using Error::Error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // z-component of the cross product; positive for a ccw turn.
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Rotation by +90 degrees, the matrix (0,-1;1,0).
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

// Symmetric 2x2 matrix stored as its three independent entries.
struct SymMat2 {
    double e11 = 0.0;
    double e12 = 0.0;
    double e22 = 0.0;

    SymMat2() = default;
    SymMat2(double a11, double a12, double a22) : e11(a11), e12(a12), e22(a22) {}

    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }

    double trace() const { return e11 + e22; }
    Vec2 apply(const Vec2& v) const { return {e11 * v.x + e12 * v.y, e12 * v.x + e22 * v.y}; }

    SymMat2 operator+(const SymMat2& o) const { return {e11 + o.e11, e12 + o.e12, e22 + o.e22}; }
    SymMat2 operator-(const SymMat2& o) const { return {e11 - o.e11, e12 - o.e12, e22 - o.e22}; }
    SymMat2 operator*(double s) const { return {e11 * s, e12 * s, e22 * s}; }

    // Frobenius product A:B (off-diagonal counted twice).
    double ddot(const SymMat2& o) const { return e11 * o.e11 + 2.0 * e12 * o.e12 + e22 * o.e22; }
    double norm() const { return std::sqrt(ddot(*this)); }
};

inline SymMat2 operator*(double s, const SymMat2& m) { return m * s; }

}  // namespace aw
