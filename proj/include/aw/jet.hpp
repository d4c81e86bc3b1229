#pragma once

#include <cmath>

namespace aw {

// First-order truncated Taylor scalar in two variables. Used to evaluate
// closed-form gradients of the benchmark solutions through the chain rule.
struct Dual2 {
    double v = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    Dual2() = default;
    Dual2(double value) : v(value) {}
    Dual2(double value, double gx, double gy) : v(value), dx(gx), dy(gy) {}

    static Dual2 var_x(double x) { return {x, 1.0, 0.0}; }
    static Dual2 var_y(double y) { return {y, 0.0, 1.0}; }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.dx, -a.dy}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    const double iv = 1.0 / b.v;
    const double q = a.v * iv;
    return {q, (a.dx - q * b.dx) * iv, (a.dy - q * b.dy) * iv};
}
inline Dual2 sin(const Dual2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {s, c * a.dx, c * a.dy};
}
inline Dual2 cos(const Dual2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {c, -s * a.dx, -s * a.dy};
}
inline Dual2 sqrt(const Dual2& a) {
    const double s = std::sqrt(a.v);
    const double d = 0.5 / s;
    return {s, d * a.dx, d * a.dy};
}
inline Dual2 pow(const Dual2& a, double e) {
    const double p = std::pow(a.v, e);
    const double d = e * std::pow(a.v, e - 1.0);
    return {p, d * a.dx, d * a.dy};
}
inline Dual2 atan2(const Dual2& y, const Dual2& x) {
    const double r2 = x.v * x.v + y.v * y.v;
    return {std::atan2(y.v, x.v), (x.v * y.dx - y.v * x.dx) / r2, (x.v * y.dy - y.v * x.dy) / r2};
}

// Second-order truncated Taylor scalar in one variable. Used for the
// tangential derivatives of Dirichlet data along a (straight) edge.
struct Jet1 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;  // plain second derivative, not halved

    Jet1() = default;
    Jet1(double value) : v(value) {}
    Jet1(double value, double first, double second) : v(value), d1(first), d2(second) {}

    static Jet1 variable(double t) { return {t, 1.0, 0.0}; }
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
    const double iv = 1.0 / b.v;
    const double q = a.v * iv;
    const double q1 = (a.d1 - q * b.d1) * iv;
    const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) * iv;
    return {q, q1, q2};
}
// chain rule for f(g): f'' g'^2 + f' g''
inline Jet1 compose(double f, double f1, double f2, const Jet1& g) {
    return {f, f1 * g.d1, f2 * g.d1 * g.d1 + f1 * g.d2};
}
inline Jet1 sin(const Jet1& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(s, c, -s, a);
}
inline Jet1 cos(const Jet1& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(c, -s, -c, a);
}
inline Jet1 sqrt(const Jet1& a) {
    const double s = std::sqrt(a.v);
    return compose(s, 0.5 / s, -0.25 / (s * a.v), a);
}
inline Jet1 pow(const Jet1& a, double e) {
    const double p = std::pow(a.v, e);
    return compose(p, e * std::pow(a.v, e - 1.0), e * (e - 1.0) * std::pow(a.v, e - 2.0), a);
}
inline Jet1 atan2(const Jet1& y, const Jet1& x) {
    const double r2 = x.v * x.v + y.v * y.v;
    const double th1 = (x.v * y.d1 - y.v * x.d1) / r2;
    const double num2 = x.v * y.d2 - y.v * x.d2;
    const double r2d = 2.0 * (x.v * x.d1 + y.v * y.d1);
    return {std::atan2(y.v, x.v), th1, (num2 - th1 * r2d) / r2};
}

// Mixed-mode helpers so benchmark formulas can mix doubles and jets freely.
inline Dual2 operator+(double a, const Dual2& b) { return Dual2(a) + b; }
inline Dual2 operator+(const Dual2& a, double b) { return a + Dual2(b); }
inline Dual2 operator-(double a, const Dual2& b) { return Dual2(a) - b; }
inline Dual2 operator-(const Dual2& a, double b) { return a - Dual2(b); }
inline Dual2 operator*(double a, const Dual2& b) { return Dual2(a) * b; }
inline Dual2 operator*(const Dual2& a, double b) { return a * Dual2(b); }
inline Dual2 operator/(double a, const Dual2& b) { return Dual2(a) / b; }
inline Dual2 operator/(const Dual2& a, double b) { return a / Dual2(b); }

inline Jet1 operator+(double a, const Jet1& b) { return Jet1(a) + b; }
inline Jet1 operator+(const Jet1& a, double b) { return a + Jet1(b); }
inline Jet1 operator-(double a, const Jet1& b) { return Jet1(a) - b; }
inline Jet1 operator-(const Jet1& a, double b) { return a - Jet1(b); }
inline Jet1 operator*(double a, const Jet1& b) { return Jet1(a) * b; }
inline Jet1 operator*(const Jet1& a, double b) { return a * Jet1(b); }
inline Jet1 operator/(double a, const Jet1& b) { return Jet1(a) / b; }
inline Jet1 operator/(const Jet1& a, double b) { return a / Jet1(b); }

}  // namespace aw
