#pragma once

#include <cassert>
#include <vector>

#include "aw/types.hpp"

namespace aw {

// Dense bivariate polynomial with triangular coefficient storage.
// Coefficients are ordered by total degree, then by the power of y:
//   [1; x, y; x^2, xy, y^2; x^3, x^2 y, x y^2, y^3; ...]
class Poly2 {
public:
    static constexpr int kMaxDegree = 32;

    Poly2() : degree_(0), c_(1, 0.0) {}
    explicit Poly2(int degree) : degree_(degree), c_(size(degree), 0.0) {
        assert(degree >= 0 && degree <= kMaxDegree);
    }

    static int size(int degree) { return (degree + 1) * (degree + 2) / 2; }
    static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

    static Poly2 constant(double a) {
        Poly2 p(0);
        p.c_[0] = a;
        return p;
    }
    // a + bx*x + by*y
    static Poly2 affine(double a, double bx, double by) {
        Poly2 p(1);
        p.c_[0] = a;
        p.c_[1] = bx;
        p.c_[2] = by;
        return p;
    }

    int degree() const { return degree_; }
    double coeff(int i, int j) const {
        const int k = index(i, j);
        return k < static_cast<int>(c_.size()) ? c_[k] : 0.0;
    }
    double& at(int i, int j) {
        assert(i + j <= degree_);
        return c_[index(i, j)];
    }
    const std::vector<double>& coeffs() const { return c_; }
    std::vector<double>& coeffs() { return c_; }

    double operator()(double x, double y) const {
        double xp[kMaxDegree + 1], yp[kMaxDegree + 1];
        xp[0] = yp[0] = 1.0;
        for (int d = 1; d <= degree_; ++d) {
            xp[d] = xp[d - 1] * x;
            yp[d] = yp[d - 1] * y;
        }
        double val = 0.0;
        int k = 0;
        for (int d = 0; d <= degree_; ++d)
            for (int j = 0; j <= d; ++j, ++k) val += c_[k] * xp[d - j] * yp[j];
        return val;
    }
    double operator()(const Vec2& p) const { return (*this)(p.x, p.y); }

    Poly2 dx() const {
        Poly2 r(degree_ > 0 ? degree_ - 1 : 0);
        for (int i = 1; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) r.at(i - 1, j) += i * coeff(i, j);
        return r;
    }
    Poly2 dy() const {
        Poly2 r(degree_ > 0 ? degree_ - 1 : 0);
        for (int i = 0; i < degree_; ++i)
            for (int j = 1; i + j <= degree_; ++j) r.at(i, j - 1) += j * coeff(i, j);
        return r;
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r(std::max(degree_, o.degree_));
        for (int i = 0; i <= r.degree_; ++i)
            for (int j = 0; i + j <= r.degree_; ++j) r.at(i, j) = coeff(i, j) + o.coeff(i, j);
        return r;
    }
    Poly2 operator-(const Poly2& o) const { return *this + o * (-1.0); }
    Poly2 operator*(double s) const {
        Poly2 r = *this;
        for (double& v : r.c_) v *= s;
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r(degree_ + o.degree_);
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) {
                const double a = coeff(i, j);
                if (a == 0.0) continue;
                for (int p = 0; p <= o.degree_; ++p)
                    for (int q = 0; p + q <= o.degree_; ++q) r.at(i + p, j + q) += a * o.coeff(p, q);
            }
        return r;
    }

    // Substitute x = sub_x(u,v), y = sub_y(u,v) for affine sub_x, sub_y.
    Poly2 compose_affine(const Poly2& sub_x, const Poly2& sub_y) const {
        assert(sub_x.degree() <= 1 && sub_y.degree() <= 1);
        std::vector<Poly2> xp(degree_ + 1), yp(degree_ + 1);
        xp[0] = constant(1.0);
        yp[0] = constant(1.0);
        for (int k = 1; k <= degree_; ++k) {
            xp[k] = xp[k - 1] * sub_x;
            yp[k] = yp[k - 1] * sub_y;
        }
        Poly2 r(degree_);
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) {
                const double a = coeff(i, j);
                if (a != 0.0) r = r + xp[i] * yp[j] * a;
            }
        return r;
    }

private:
    int degree_;
    std::vector<double> c_;
};

// Symmetric-matrix-valued polynomial (three scalar components).
struct SymPoly {
    Poly2 p11, p12, p22;

    SymMat2 operator()(const Vec2& p) const { return {p11(p), p12(p), p22(p)}; }
};

}  // namespace aw
