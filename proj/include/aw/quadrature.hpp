#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "aw/types.hpp"

namespace aw {

namespace quadrature {

constexpr int kMaxDegree = 50;

struct GaussPoint {
    double t;  // abscissa on [0,1]
    double w;  // weight, sum over the rule = 1
};

// Gauss-Legendre rule with n points on [0,1], exact through degree 2n-1.
// Nodes by Newton iteration on the Legendre recurrence.
inline std::vector<GaussPoint> gauss_legendre(int n) {
    std::vector<GaussPoint> pts(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // root guess on [-1,1]
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pnm1 = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        pts[n - 1 - i] = {0.5 * (x + 1.0), 0.5 * w};
    }
    return pts;
}

}  // namespace quadrature

// 1D rule on the unit interval; weights sum to 1 and must be scaled by the
// physical edge length on use.
struct EdgeRule {
    int degree = 0;
    std::vector<double> points;
    std::vector<double> weights;

    static const EdgeRule& for_degree(int degree) {
        if (degree < 0 || degree > quadrature::kMaxDegree) throw Error("EdgeRule: unsupported degree");
        static std::map<int, EdgeRule> cache;
        const int n = degree / 2 + 1;
        auto it = cache.find(n);
        if (it == cache.end()) {
            EdgeRule r;
            r.degree = 2 * n - 1;
            for (const auto& gp : quadrature::gauss_legendre(n)) {
                r.points.push_back(gp.t);
                r.weights.push_back(gp.w);
            }
            it = cache.emplace(n, std::move(r)).first;
        }
        return it->second;
    }
};

// Triangle rule in barycentric coordinates; weights sum to 1 and must be
// scaled by the physical triangle area on use. Built as a collapsed
// (Duffy-type) Gauss product, so any degree up to kMaxDegree is exact.
struct TriangleRule {
    int degree = 0;
    std::vector<std::array<double, 3>> barycentric;
    std::vector<double> weights;

    static const TriangleRule& for_degree(int degree) {
        if (degree < 0 || degree > quadrature::kMaxDegree) throw Error("TriangleRule: unsupported degree");
        static std::map<int, TriangleRule> cache;
        auto it = cache.find(degree);
        if (it == cache.end()) {
            TriangleRule r;
            r.degree = degree;
            // x = u, y = v(1-u): integrand picks up a factor (1-u), one extra
            // degree in u.
            const auto gu = quadrature::gauss_legendre((degree + 1) / 2 + 1);
            const auto gv = quadrature::gauss_legendre(degree / 2 + 1);
            for (const auto& pu : gu)
                for (const auto& pv : gv) {
                    const double x = pu.t;
                    const double y = pv.t * (1.0 - pu.t);
                    r.barycentric.push_back({1.0 - x - y, x, y});
                    r.weights.push_back(2.0 * pu.w * pv.w * (1.0 - pu.t));
                }
            it = cache.emplace(degree, std::move(r)).first;
        }
        return it->second;
    }
};

inline double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * (b - a).cross(c - a);
}

// Integral of f over the triangle (a,b,c); exact for polynomials of total
// degree <= degree.
template <class F>
double integrate_triangle(const Vec2& a, const Vec2& b, const Vec2& c, F&& f, int degree) {
    const TriangleRule& rule = TriangleRule::for_degree(degree);
    const double area = triangle_area(a, b, c);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const auto& l = rule.barycentric[q];
        const Vec2 p = a * l[0] + b * l[1] + c * l[2];
        sum += rule.weights[q] * f(p);
    }
    return sum * area;
}

// Integral of f along the segment a->b with respect to arc length.
template <class F>
double integrate_edge(const Vec2& a, const Vec2& b, F&& f, int degree) {
    const EdgeRule& rule = EdgeRule::for_degree(degree);
    const double len = (b - a).norm();
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Vec2 p = a + (b - a) * rule.points[q];
        sum += rule.weights[q] * f(p);
    }
    return sum * len;
}

namespace quadrature {

template <class F>
double integrate_adaptive_rec(const Vec2& a, const Vec2& b, const Vec2& c, F& f, int degree,
                              double rel_tol, int depth, double coarse) {
    const Vec2 mab = (a + b) * 0.5, mbc = (b + c) * 0.5, mca = (c + a) * 0.5;
    const double s0 = integrate_triangle(a, mab, mca, f, degree);
    const double s1 = integrate_triangle(mab, b, mbc, f, degree);
    const double s2 = integrate_triangle(mca, mbc, c, f, degree);
    const double s3 = integrate_triangle(mab, mbc, mca, f, degree);
    const double fine = s0 + s1 + s2 + s3;
    const double scale = std::max({std::abs(fine), std::abs(coarse), 1e-300});
    if (depth <= 0 || std::abs(fine - coarse) <= rel_tol * scale) return fine;
    double sum = 0.0;
    sum += integrate_adaptive_rec(a, mab, mca, f, degree, rel_tol, depth - 1, s0);
    sum += integrate_adaptive_rec(mab, b, mbc, f, degree, rel_tol, depth - 1, s1);
    sum += integrate_adaptive_rec(mca, mbc, c, f, degree, rel_tol, depth - 1, s2);
    sum += integrate_adaptive_rec(mab, mbc, mca, f, degree, rel_tol, depth - 1, s3);
    return sum;
}

}  // namespace quadrature

// Integral with a subdivision safeguard: whenever the rule and its refinement
// by quadrisection disagree beyond rel_tol, recurse on the children.
template <class F>
double integrate_triangle_adaptive(const Vec2& a, const Vec2& b, const Vec2& c, F&& f, int degree,
                                   double rel_tol = 1e-8, int max_depth = 16) {
    const double coarse = integrate_triangle(a, b, c, f, degree);
    return quadrature::integrate_adaptive_rec(a, b, c, f, degree, rel_tol, max_depth, coarse);
}

}  // namespace aw
