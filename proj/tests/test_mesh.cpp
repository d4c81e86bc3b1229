#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "aw/mesh.hpp"
#include "helpers.hpp"

using namespace aw;
using namespace aw::testing;

TEST_CASE("build: unit square and reference triangle") {
    const Triangulation sq = unit_square();
    CHECK(sq.num_vertices() == 4);
    CHECK(sq.num_edges() == 5);
    CHECK(sq.num_triangles() == 2);
    int interior = 0;
    for (const Edge& e : sq.edges()) interior += e.is_boundary() ? 0 : 1;
    CHECK(interior == 1);
    CHECK(sq.validate().empty());

    const Triangulation ref = reference_triangle();
    CHECK(ref.num_edges() == 3);
    for (const Edge& e : ref.edges()) CHECK(e.is_boundary());
    CHECK(ref.validate().empty());
}

TEST_CASE("build: L-shape fan satisfies the Euler relation") {
    // rotated L-shape, re-entrant corner at the origin
    std::vector<Vec2> v = {{0, 0}, {-1, -1}, {0, -2}, {2, 0}, {0, 2}, {-1, 1}};
    std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}};
    std::vector<BoundaryEdgeSpec> b;
    b.push_back({0, 1, BoundaryKind::Neumann});
    b.push_back({1, 2, BoundaryKind::Dirichlet});
    b.push_back({2, 3, BoundaryKind::Dirichlet});
    b.push_back({3, 4, BoundaryKind::Dirichlet});
    b.push_back({4, 5, BoundaryKind::Dirichlet});
    b.push_back({5, 0, BoundaryKind::Neumann});
    const Triangulation m = Triangulation::build(v, t, b);
    CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 1);
    CHECK(m.num_edges() == 9);
    CHECK(m.validate().empty());
}

TEST_CASE("build: error cases") {
    SECTION("non-manifold edge") {
        std::vector<Vec2> v = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.2, 0.9}};
        std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
        REQUIRE_THROWS_AS(Triangulation::build(v, t, {}), MeshError);
    }
    SECTION("inverted triangle") {
        std::vector<Vec2> v = {{0, 0}, {1, 0}, {0, 1}};
        std::vector<std::array<int, 3>> t = {{0, 2, 1}};
        REQUIRE_THROWS_AS(Triangulation::build(v, t, {}), MeshError);
    }
    SECTION("unlabeled boundary edge") {
        std::vector<Vec2> v = {{0, 0}, {1, 0}, {0, 1}};
        std::vector<std::array<int, 3>> t = {{0, 1, 2}};
        std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Dirichlet}};
        REQUIRE_THROWS_AS(Triangulation::build(v, t, b), MeshError);
    }
    SECTION("invalid vertex index") {
        std::vector<Vec2> v = {{0, 0}, {1, 0}, {0, 1}};
        std::vector<std::array<int, 3>> t = {{0, 1, 7}};
        REQUIRE_THROWS_AS(Triangulation::build(v, t, {}), MeshError);
    }
}

TEST_CASE("edge frames: orientation conventions") {
    const Triangulation sq = unit_square();
    for (const Edge& e : sq.edges()) {
        CHECK(std::abs(e.frame.nu.norm() - 1.0) <= 1e-14);
        CHECK(std::abs(e.frame.tau.norm() - 1.0) <= 1e-14);
        CHECK(e.frame.nu.dot(e.frame.tau) == 0.0);  // exact by construction
        const Vec2 r = rot90(e.frame.nu);
        CHECK(r.x == e.frame.tau.x);
        CHECK(r.y == e.frame.tau.y);
        if (e.is_boundary()) {
            // nu points outward: midpoint + eps*nu leaves the square
            const Vec2 probe = e.frame.mid + e.frame.nu * 1e-6;
            const bool inside =
                probe.x >= 0 && probe.x <= 1 && probe.y >= 0 && probe.y <= 1;
            CHECK_FALSE(inside);
        } else {
            CHECK(e.tri_plus < e.tri_minus);
            // nu points from T+ into T-: probe lands in T- (here the upper triangle)
            const Vec2 probe = e.frame.mid + e.frame.nu * 1e-6;
            CHECK(probe.y > probe.x);
        }
    }
}

TEST_CASE("refine: closure on the two-triangle square") {
    const Triangulation sq = unit_square();
    const Triangulation fine = sq.refine({0});
    CHECK(fine.num_triangles() == 4);
    CHECK(fine.num_vertices() == 5);
    CHECK(fine.validate().empty());

    SECTION("empty marking is the identity") {
        const Triangulation same = sq.refine({});
        CHECK(same.num_triangles() == sq.num_triangles());
        CHECK(same.num_vertices() == sq.num_vertices());
    }
    SECTION("vertex monotonicity") {
        for (int v = 0; v < sq.num_vertices(); ++v) {
            CHECK(fine.vertex(v).x == sq.vertex(v).x);
            CHECK(fine.vertex(v).y == sq.vertex(v).y);
        }
    }
    SECTION("boundary labels inherited") {
        for (const Edge& e : fine.edges())
            if (e.is_boundary()) CHECK(e.kind == BoundaryKind::Dirichlet);
    }
}

TEST_CASE("refine: uniform quadrisection counts") {
    Triangulation m = reference_triangle();
    for (int k = 0; k < 3; ++k) {
        m = m.refine_uniform();
        CHECK(m.validate().empty());
    }
    CHECK(m.num_triangles() == 64);
    // uniform refinement halves the mesh size
    CHECK(m.max_diameter() == Catch::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-13));
}

TEST_CASE("shape regularity values") {
    CHECK(reference_triangle().shape_regularity() == Catch::Approx(M_PI / 4).epsilon(1e-13));
    std::vector<Vec2> v = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    std::vector<std::array<int, 3>> t = {{0, 1, 2}};
    std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Dirichlet},
                                       {1, 2, BoundaryKind::Dirichlet},
                                       {2, 0, BoundaryKind::Dirichlet}};
    CHECK(Triangulation::build(v, t, b).shape_regularity() ==
          Catch::Approx(M_PI / 3).epsilon(1e-12));
}

TEST_CASE("newest-vertex bisection: angles and similarity classes") {
    // irregular start
    std::vector<Vec2> verts = {{0, 0}, {1, 0}, {0.3, 0.8}};
    std::vector<std::array<int, 3>> tris = {{0, 1, 2}};
    std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Dirichlet},
                                       {1, 2, BoundaryKind::Dirichlet},
                                       {2, 0, BoundaryKind::Dirichlet}};
    Triangulation m = Triangulation::build(verts, tris, b);
    const double a0 = m.shape_regularity();

    std::set<std::array<long long, 3>> classes;
    auto angle_key = [&](int t) {
        const auto c = m.tri_coords(t);
        std::array<double, 3> ang;
        for (int k = 0; k < 3; ++k) {
            const Vec2 u = c[(k + 1) % 3] - c[k];
            const Vec2 w = c[(k + 2) % 3] - c[k];
            ang[k] = std::atan2(std::abs(u.cross(w)), u.dot(w));
        }
        std::sort(ang.begin(), ang.end());
        return std::array<long long, 3>{llround(ang[0] * 1e9), llround(ang[1] * 1e9),
                                        llround(ang[2] * 1e9)};
    };

    for (int depth = 0; depth < 8; ++depth) {
        std::vector<int> all(m.num_triangles());
        for (int t = 0; t < m.num_triangles(); ++t) all[t] = t;
        m = m.refine(all);
        REQUIRE(m.validate().empty());
        REQUIRE(m.shape_regularity() >= 0.5 * a0);
        for (int t = 0; t < m.num_triangles(); ++t) classes.insert(angle_key(t));
    }
    CHECK(classes.size() <= 4);
}

TEST_CASE("project_boundary: radial projection onto the quarter circle") {
    const double a9 = 9.0 * M_PI / 180.0;
    const Vec2 pa{0.25, 0.0};
    const Vec2 pb{0.25 * std::cos(a9), 0.25 * std::sin(a9)};
    const Vec2 mid = (pa + pb) * 0.5;
    std::vector<Vec2> v = {pa, mid, pb, {1.0, 0.5}};
    std::vector<std::array<int, 3>> t = {{0, 3, 1}, {1, 3, 2}};
    std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Dirichlet, true},
                                       {1, 2, BoundaryKind::Dirichlet, true},
                                       {2, 3, BoundaryKind::Dirichlet},
                                       {3, 0, BoundaryKind::Dirichlet}};
    const Triangulation m = Triangulation::build(v, t, b);
    auto radial = [](const Vec2& p) { return p * (0.25 / p.norm()); };
    const Triangulation pm = m.project_boundary(radial);
    CHECK(pm.vertex(1).norm() == Catch::Approx(0.25).epsilon(1e-14));
    CHECK(std::atan2(pm.vertex(1).y, pm.vertex(1).x) ==
          Catch::Approx(4.5 * M_PI / 180.0).epsilon(1e-12));
    // endpoints already on the circle stay put
    CHECK(pm.vertex(0).x == Catch::Approx(0.25).epsilon(1e-14));
    CHECK(pm.vertex(2).x == Catch::Approx(pb.x).epsilon(1e-14));
    CHECK(pm.validate().empty());
}

TEST_CASE("project_boundary: reports inversion") {
    const Vec2 a{0.25, 0.0}, b{0.0, 0.25};
    const Vec2 m = (a + b) * 0.5;
    const Vec2 q = m * 1.05;  // between the chord and the circle
    std::vector<Vec2> v = {a, m, b, q};
    std::vector<std::array<int, 3>> t = {{0, 3, 1}, {1, 3, 2}};
    std::vector<BoundaryEdgeSpec> bs = {{0, 1, BoundaryKind::Dirichlet, true},
                                        {1, 2, BoundaryKind::Dirichlet, true},
                                        {2, 3, BoundaryKind::Dirichlet},
                                        {3, 0, BoundaryKind::Dirichlet}};
    const Triangulation mesh = Triangulation::build(v, t, bs);
    auto radial = [](const Vec2& p) { return p * (0.25 / p.norm()); };
    REQUIRE_THROWS_AS(mesh.project_boundary(radial), MeshError);
}

TEST_CASE("mesh text format round trip") {
    Triangulation m = mixed_square().refine({0, 1});
    std::ostringstream os;
    write_mesh(os, m);
    std::istringstream is(os.str());
    const Triangulation back = read_mesh(is);
    REQUIRE(back.num_vertices() == m.num_vertices());
    REQUIRE(back.num_triangles() == m.num_triangles());
    REQUIRE(back.num_edges() == m.num_edges());
    for (int v = 0; v < m.num_vertices(); ++v) {
        CHECK(back.vertex(v).x == m.vertex(v).x);
        CHECK(back.vertex(v).y == m.vertex(v).y);
    }
    for (int t = 0; t < m.num_triangles(); ++t) {
        CHECK(back.tri(t) == m.tri(t));
        CHECK(back.refinement_vertex(t) == m.refinement_vertex(t));
    }
    for (int e = 0; e < m.num_edges(); ++e)
        if (m.edge(e).is_boundary()) CHECK(back.edge(e).kind == m.edge(e).kind);

    SECTION("comments and bad input") {
        std::istringstream good("ntri-mesh 1\n# comment\nv 0 0\nv 1 0\nv 0 1\nt 0 1 2\n"
                                "b 0 1 D\nb 1 2 N\nb 2 0 D\n");
        const Triangulation g = read_mesh(good);
        CHECK(g.num_triangles() == 1);
        std::istringstream bad("wrong 1\n");
        REQUIRE_THROWS_AS(read_mesh(bad), MeshError);
    }
}

TEST_CASE("refine keeps invariants over randomized sequences") {
    Triangulation m = mixed_square();
    std::mt19937 rng(7);
    for (int step = 0; step < 6; ++step) {
        std::vector<int> marked;
        for (int t = 0; t < m.num_triangles(); ++t)
            if (rng() % 3 == 0) marked.push_back(t);
        if (marked.empty()) marked.push_back(0);
        const Triangulation next = m.refine(marked);
        REQUIRE(next.validate().empty());
        REQUIRE(next.num_vertices() > m.num_vertices());
        // marked triangles got bisected: triangle count grows at least by |marked|
        REQUIRE(next.num_triangles() >= m.num_triangles() + static_cast<int>(marked.size()));
        m = next;
    }
}
