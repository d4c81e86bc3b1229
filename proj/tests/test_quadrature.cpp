#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "aw/jet.hpp"
#include "aw/poly.hpp"
#include "aw/quadrature.hpp"

using namespace aw;

namespace {

// analytic oracle: \int_{T_ref} x^a y^b dx dy = a! b! / (a+b+2)!
double monomial_integral(int a, int b) {
    double num = 1.0;
    for (int k = 2; k <= a; ++k) num *= k;
    for (int k = 2; k <= b; ++k) num *= k;
    double den = 1.0;
    for (int k = 2; k <= a + b + 2; ++k) den *= k;
    return num / den;
}

const Vec2 r0{0.0, 0.0}, r1{1.0, 0.0}, r2{0.0, 1.0};

}  // namespace

TEST_CASE("triangle rule: monomial exactness sweep") {
    for (int deg = 0; deg <= 14; ++deg) {
        for (int a = 0; a + 0 <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b) {
                const double got = integrate_triangle(
                    r0, r1, r2, [&](const Vec2& p) { return std::pow(p.x, a) * std::pow(p.y, b); },
                    deg);
                const double want = monomial_integral(a, b);
                REQUIRE(std::abs(got - want) <= 1e-13 * std::abs(want));
            }
    }
}

TEST_CASE("triangle rule: reference values") {
    CHECK(integrate_triangle(r0, r1, r2, [](const Vec2&) { return 1.0; }, 0) ==
          Catch::Approx(0.5).epsilon(1e-14));
    // frozen from the beta-integral oracle above
    REQUIRE(monomial_integral(2, 2) == Catch::Approx(1.0 / 180.0).epsilon(1e-15));
    REQUIRE(monomial_integral(3, 3) == Catch::Approx(1.0 / 1120.0).epsilon(1e-15));
    CHECK(integrate_triangle(r0, r1, r2,
                             [](const Vec2& p) { return p.x * p.x * p.y * p.y; }, 10) ==
          Catch::Approx(1.0 / 180.0).epsilon(1e-13));
    CHECK(integrate_triangle(r0, r1, r2,
                             [](const Vec2& p) { return p.x * p.x * p.x * p.y * p.y * p.y; }, 10) ==
          Catch::Approx(1.0 / 1120.0).epsilon(1e-13));
}

TEST_CASE("triangle rule: weights positive, sum to one") {
    for (int deg : {0, 1, 2, 5, 10, 13, 20}) {
        const auto& rule = TriangleRule::for_degree(deg);
        double sum = 0.0;
        for (double w : rule.weights) {
            REQUIRE(w > 0.0);
            sum += w;
        }
        REQUIRE(sum == Catch::Approx(1.0).epsilon(1e-14));
        for (const auto& l : rule.barycentric)
            REQUIRE(std::abs(l[0] + l[1] + l[2] - 1.0) <= 1e-14);
    }
}

TEST_CASE("triangle rule: unsupported degree") {
    REQUIRE_THROWS_AS(TriangleRule::for_degree(-1), Error);
    REQUIRE_THROWS_AS(TriangleRule::for_degree(51), Error);
    REQUIRE_THROWS_AS(EdgeRule::for_degree(99), Error);
}

TEST_CASE("edge rule: reference values and symmetry") {
    CHECK(integrate_edge(Vec2{0, 0}, Vec2{1, 0}, [](const Vec2&) { return 1.0; }, 0) ==
          Catch::Approx(1.0).epsilon(1e-14));
    CHECK(integrate_edge(Vec2{0, 0}, Vec2{1, 0}, [](const Vec2& p) { return p.x * p.x * p.x; }, 3) ==
          Catch::Approx(0.25).epsilon(1e-14));
    // arclength parametrization on an edge of length 2: \int_0^2 s^6 ds = 2^7/7
    const auto f = [](const Vec2& p) { return std::pow(p.x, 6); };
    CHECK(integrate_edge(Vec2{0, 0}, Vec2{2, 0}, f, 6) ==
          Catch::Approx(128.0 / 7.0).epsilon(1e-14));

    for (int deg : {3, 7, 12, 15}) {
        const auto& rule = EdgeRule::for_degree(deg);
        REQUIRE(rule.degree >= deg);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            sum += rule.weights[i];
            // symmetric about 1/2
            const double mirror = rule.points[rule.points.size() - 1 - i];
            REQUIRE(std::abs(rule.points[i] + mirror - 1.0) <= 1e-14);
        }
        REQUIRE(sum == Catch::Approx(1.0).epsilon(1e-14));
        // monomial exactness
        for (int k = 0; k <= deg; ++k) {
            double got = 0.0;
            for (std::size_t i = 0; i < rule.points.size(); ++i)
                got += rule.weights[i] * std::pow(rule.points[i], k);
            REQUIRE(got == Catch::Approx(1.0 / (k + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("affine invariance") {
    const auto f = [](const Vec2& p) { return p.x * p.x * p.x * p.y + 2.0 * p.y * p.y; };
    const Vec2 a{1.0, -2.0};
    const Vec2 c1{2.0, 0.5}, c2{1.0, 3.0};  // columns of A
    auto map = [&](const Vec2& p) { return a + c1 * p.x + c2 * p.y; };
    const double det = c1.cross(c2);
    const double lhs = integrate_triangle(r0, r1, r2, [&](const Vec2& p) { return f(map(p)); }, 4);
    const double rhs = integrate_triangle(map(r0), map(r1), map(r2), f, 4) / det;
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("adaptive subdivision safeguard") {
    const auto peaked = [](const Vec2& p) {
        return std::exp(-200.0 * ((p.x - 0.21) * (p.x - 0.21) + (p.y - 0.34) * (p.y - 0.34)));
    };
    // two independent adaptive routes (different base rule and tolerance)
    const double ref = integrate_triangle_adaptive(r0, r1, r2, peaked, 16, 1e-12, 18);
    const double adap = integrate_triangle_adaptive(r0, r1, r2, peaked, 10, 1e-10, 14);
    REQUIRE(adap == Catch::Approx(ref).epsilon(1e-8));
    REQUIRE(adap > 0.0);
    REQUIRE(adap < M_PI / 200.0);  // whole-plane Gaussian integral bounds it

    // smooth integrands take the non-adaptive early exit
    const auto smooth = [](const Vec2& p) { return std::sin(p.x + 2.0 * p.y); };
    REQUIRE(integrate_triangle_adaptive(r0, r1, r2, smooth, 12) ==
            Catch::Approx(integrate_triangle(r0, r1, r2, smooth, 30)).epsilon(1e-12));
}

TEST_CASE("Poly2 arithmetic and derivatives") {
    Poly2 x = Poly2::affine(0, 1, 0), y = Poly2::affine(0, 0, 1);
    Poly2 p = (Poly2::constant(1) + x * 2.0 - y) * (x + y) * (x + y);
    auto direct = [](double a, double b) { return (1 + 2 * a - b) * (a + b) * (a + b); };
    for (const Vec2 q : {Vec2{0.3, -0.7}, Vec2{0.0, 1.5}, Vec2{-2.0, 0.0}})
        REQUIRE(p(q) == Catch::Approx(direct(q.x, q.y)).margin(1e-12));

    Poly2 m = x * x * y * y * y;  // x^2 y^3
    REQUIRE(m.dx().coeff(1, 3) == Catch::Approx(2.0));
    REQUIRE(m.dy().coeff(2, 2) == Catch::Approx(3.0));
    REQUIRE(m.dx()(1.5, -0.5) == Catch::Approx(2 * 1.5 * std::pow(-0.5, 3)).margin(1e-13));

    Poly2 sq = x * x;
    Poly2 composed = sq.compose_affine(Poly2::affine(1, 2, -1), Poly2::affine(0, 0, 1));
    REQUIRE(composed(0.4, 0.3) == Catch::Approx(std::pow(1 + 2 * 0.4 - 0.3, 2)).margin(1e-13));
}

TEST_CASE("jets match finite differences") {
    auto f1 = [](auto t) { return sin(t * t + 1.0) / sqrt(t + 2.0); };
    const double t0 = 0.7, h = 1e-5;
    const Jet1 jt = f1(Jet1::variable(t0));
    const double fp = (f1(t0 + h) - f1(t0 - h)) / (2 * h);
    const double fpp = (f1(t0 + h) - 2 * f1(t0) + f1(t0 - h)) / (h * h);
    REQUIRE(jt.v == Catch::Approx(f1(t0)).epsilon(1e-14));
    REQUIRE(jt.d1 == Catch::Approx(fp).epsilon(1e-8));
    REQUIRE(jt.d2 == Catch::Approx(fpp).epsilon(1e-5));

    auto f2 = [](auto x, auto y) { return pow(x * x + y * y, 0.27) * cos(atan2(y, x)); };
    const double x0 = 0.8, y0 = -0.5;
    const Dual2 d = f2(Dual2::var_x(x0), Dual2::var_y(y0));
    const double gx = (f2(x0 + h, y0) - f2(x0 - h, y0)) / (2 * h);
    const double gy = (f2(x0, y0 + h) - f2(x0, y0 - h)) / (2 * h);
    REQUIRE(d.v == Catch::Approx(f2(x0, y0)).epsilon(1e-14));
    REQUIRE(d.dx == Catch::Approx(gx).epsilon(1e-8));
    REQUIRE(d.dy == Catch::Approx(gy).epsilon(1e-8));

    // jet of a polynomial along a line: exact second derivative
    auto poly = [](auto t) { return 3.0 + t * (2.0 + t * (5.0 + t)); };
    const Jet1 jp = poly(Jet1::variable(2.0));
    REQUIRE(jp.d1 == Catch::Approx(2 + 2 * 5 * 2.0 + 3 * 4.0).epsilon(1e-14));
    REQUIRE(jp.d2 == Catch::Approx(2 * 5 + 6 * 2.0).epsilon(1e-14));
}
