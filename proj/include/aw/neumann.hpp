#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <vector>

#include "aw/dofmap.hpp"
#include "aw/mesh.hpp"
#include "aw/quadrature.hpp"

namespace aw {

// Traction datum on the Neumann boundary. Receives the evaluation point and
// the outward normal of the edge being integrated, so piecewise data that
// jumps at corners stays well defined.
using TractionFn = std::function<Vec2(const Vec2&, const Vec2&)>;

// The discrete Neumann datum g_h in the normal trace space G(T): the edge
// moment dofs carry the degree-0/1 moments of g (which is exactly the
// orthogonality g - g_h \perp P1 per edge), and the stress values at boundary
// vertices are pinned as far as the one-sided normal traces determine them.
struct NeumannData {
    struct VertexConstraint {
        Eigen::Vector3d particular = Eigen::Vector3d::Zero();   // some admissible (s11,s12,s22)
        Eigen::Matrix<double, 3, Eigen::Dynamic> nullspace;     // unconstrained directions
    };

    std::map<int, std::array<double, 4>> edge_moments;  // Neumann edge id -> 4 dof values
    std::map<int, VertexConstraint> vertex;             // vertex id -> affine constraint set

    bool empty() const { return edge_moments.empty() && vertex.empty(); }

    // Reconstructs g_h on a Neumann edge at parameter t in [0,1] (arclength
    // a->b). Per component this is the cubic with the pinned endpoint values
    // and edge moments.
    Vec2 g_h(const Triangulation& mesh, int e, double t) const {
        const Edge& ed = mesh.edge(e);
        const auto momq = edge_moments.find(e);
        if (momq == edge_moments.end()) throw Error("NeumannData::g_h: not a constrained edge");
        auto endpoint = [&](int v) -> Vec2 {
            const auto it = vertex.find(v);
            if (it == vertex.end()) throw Error("NeumannData::g_h: unconstrained endpoint");
            const Eigen::Vector3d& s = it->second.particular;
            return SymMat2{s[0], s[1], s[2]}.apply(ed.frame.nu);
        };
        const Vec2 ga = endpoint(ed.a);
        const Vec2 gb = endpoint(ed.b);
        auto cubic = [&](double p0, double p1, double m0, double m1) {
            // p(0), p(1), \int_0^1 p, \int_0^1 p (t - 1/2) determine p in P3
            Eigen::Matrix4d A;
            A << 1, 0, 0, 0,                       // p(0)
                1, 1, 1, 1,                        // p(1)
                1, 0.5, 1.0 / 3.0, 0.25,           // moment 0
                0, 1.0 / 12.0, 1.0 / 12.0, 0.075;  // moment 1
            const Eigen::Vector4d c = A.lu().solve(Eigen::Vector4d(p0, p1, m0, m1));
            return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
        };
        const auto& m = momq->second;
        return {cubic(ga.x, gb.x, m[0], m[2]), cubic(ga.y, gb.y, m[1], m[3])};
    }
};

// Computes the constrained dof values encoding g_h. Vertices where adjacent
// Neumann edges demand incompatible values must appear in `overrides`
// (map vertex id -> full stress tensor), otherwise an error is raised.
inline NeumannData interpolate_neumann(const Triangulation& mesh, const TractionFn& g,
                                       const std::map<int, SymMat2>& overrides = {},
                                       int quad_degree = 12) {
    NeumannData nd;
    // edge moments of g in the edge frame
    const EdgeRule& rule = EdgeRule::for_degree(quad_degree);
    std::map<int, std::vector<int>> vertex_edges;  // Neumann vertex -> adjacent Neumann edges
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edge(e);
        if (!ed.is_boundary() || ed.kind != BoundaryKind::Neumann) continue;
        const Vec2 pa = mesh.vertex(ed.a), pb = mesh.vertex(ed.b);
        std::array<double, 4> mom = {0, 0, 0, 0};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q], w = rule.weights[q];
            const Vec2 gv = g(pa + (pb - pa) * s, ed.frame.nu);
            mom[0] += w * gv.x;
            mom[1] += w * gv.y;
            mom[2] += w * (s - 0.5) * gv.x;
            mom[3] += w * (s - 0.5) * gv.y;
        }
        nd.edge_moments[e] = mom;
        vertex_edges[ed.a].push_back(e);
        vertex_edges[ed.b].push_back(e);
    }
    // vertex constraints: sigma(z) nu_E = g|_E(z) for every adjacent Neumann edge
    for (const auto& [v, edges] : vertex_edges) {
        NeumannData::VertexConstraint vc;
        if (auto ov = overrides.find(v); ov != overrides.end()) {
            vc.particular << ov->second.e11, ov->second.e12, ov->second.e22;
            vc.nullspace.resize(3, 0);
            nd.vertex.emplace(v, std::move(vc));
            continue;
        }
        const int k = static_cast<int>(edges.size());
        Eigen::MatrixXd M(2 * k, 3);
        Eigen::VectorXd r(2 * k);
        for (int i = 0; i < k; ++i) {
            const Edge& ed = mesh.edge(edges[i]);
            const Vec2 nu = ed.frame.nu;
            const Vec2 gv = g(mesh.vertex(v), nu);
            M.row(2 * i) << nu.x, nu.y, 0.0;
            M.row(2 * i + 1) << 0.0, nu.x, nu.y;
            r[2 * i] = gv.x;
            r[2 * i + 1] = gv.y;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double smax = svd.singularValues()[0];
        const double tol = std::max(smax, 1.0) * 1e-10;
        svd.setThreshold(tol / std::max(smax, 1e-300));
        vc.particular = svd.solve(r);
        const double resid = (M * vc.particular - r).norm();
        if (resid > 1e-8 * std::max(1.0, r.norm()))
            throw Error("interpolate_neumann: incompatible corner traction at vertex " +
                        std::to_string(v) + " and no override given");
        const int rank = static_cast<int>(svd.rank());
        vc.nullspace = svd.matrixV().rightCols(3 - rank);
        nd.vertex.emplace(v, std::move(vc));
    }
    return nd;
}

}  // namespace aw
