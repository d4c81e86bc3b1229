#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aw/element.hpp"
#include "aw/poly.hpp"

namespace aw {

// Piecewise-P3 symmetric matrix field over the Arnold-Winther dofs. Stores
// the collapsed per-triangle polynomial (local-frame coordinates) next to the
// global dof vector.
struct StressField {
    const Triangulation* mesh = nullptr;
    Eigen::VectorXd dofs;                 // raw stress dof values
    std::vector<LocalFrame> frames;       // per triangle
    std::vector<SymPoly> tri_poly;        // per triangle, in local coordinates

    SymMat2 value(int t, const Vec2& phys) const {
        const Vec2 q = frames[t].to_local(phys);
        return tri_poly[t](q);
    }

    double l2_norm(int quad_degree = 8) const {
        double sum = 0.0;
        for (int t = 0; t < mesh->num_triangles(); ++t) {
            const auto c = mesh->tri_coords(t);
            sum += integrate_triangle(
                c[0], c[1], c[2], [&](const Vec2& p) { return value(t, p).ddot(value(t, p)); },
                quad_degree);
        }
        return std::sqrt(sum);
    }
};

// Piecewise-P1 vector field, discontinuous across triangles. Coefficients per
// triangle: components times {1, xi, eta} in the local frame.
struct DisplacementField {
    const Triangulation* mesh = nullptr;
    Eigen::VectorXd dofs;
    std::vector<LocalFrame> frames;

    Vec2 value(int t, const Vec2& phys) const {
        const Vec2 q = frames[t].to_local(phys);
        const auto* c = dofs.data() + 6 * t;
        return {c[0] + c[1] * q.x + c[2] * q.y, c[3] + c[4] * q.x + c[5] * q.y};
    }
};

inline StressField extract_stress_field(const Triangulation& mesh, const Eigen::VectorXd& raw_dofs) {
    StressField f;
    f.mesh = &mesh;
    f.dofs = raw_dofs;
    const DofMap dm(mesh);
    f.frames.resize(mesh.num_triangles());
    f.tri_poly.resize(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const AWLocalBasis basis = build_local_basis(mesh, t);
        const auto gdofs = dm.stress_dofs(mesh, t);
        Eigen::Matrix<double, 24, 1> local;
        for (int j = 0; j < 24; ++j) local[j] = raw_dofs[gdofs[j]];
        const Eigen::Matrix<double, 30, 1> c = basis.coeff * local;
        f.frames[t] = basis.frame;
        SymPoly& sp = f.tri_poly[t];
        sp.p11 = Poly2(3);
        sp.p12 = Poly2(3);
        sp.p22 = Poly2(3);
        for (int k = 0; k < 10; ++k) {
            sp.p11.coeffs()[k] = c[k];
            sp.p12.coeffs()[k] = c[10 + k];
            sp.p22.coeffs()[k] = c[20 + k];
        }
    }
    return f;
}

// Dof functionals applied to an analytic stress field; reproduces any field
// in the local AW space exactly (up to quadrature of the moments).
template <class SigmaFn>
Eigen::VectorXd interpolate_stress(const Triangulation& mesh, SigmaFn&& sigma) {
    const DofMap dm(mesh);
    Eigen::VectorXd dofs = Eigen::VectorXd::Zero(dm.n_stress());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const SymMat2 s = sigma(mesh.vertex(v));
        dofs[dm.vertex_dof(v, 0)] = s.e11;
        dofs[dm.vertex_dof(v, 1)] = s.e12;
        dofs[dm.vertex_dof(v, 2)] = s.e22;
    }
    const EdgeRule& rule = EdgeRule::for_degree(11);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edge(e);
        const Vec2 pa = mesh.vertex(ed.a), pb = mesh.vertex(ed.b);
        double mom[4] = {0, 0, 0, 0};
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q], w = rule.weights[q];
            const Vec2 g = sigma(pa + (pb - pa) * s).apply(ed.frame.nu);
            mom[0] += w * g.x;
            mom[1] += w * g.y;
            mom[2] += w * (s - 0.5) * g.x;
            mom[3] += w * (s - 0.5) * g.y;
        }
        for (int k = 0; k < 4; ++k) dofs[dm.edge_dof(e, k)] = mom[k];
    }
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto c = mesh.tri_coords(t);
        SymMat2 avg{0, 0, 0};
        const TriangleRule& tr = TriangleRule::for_degree(8);
        for (std::size_t q = 0; q < tr.weights.size(); ++q) {
            const auto& l = tr.barycentric[q];
            avg = avg + tr.weights[q] * sigma(c[0] * l[0] + c[1] * l[1] + c[2] * l[2]);
        }
        dofs[dm.interior_dof(t, 0)] = avg.e11;
        dofs[dm.interior_dof(t, 1)] = avg.e12;
        dofs[dm.interior_dof(t, 2)] = avg.e22;
    }
    return dofs;
}

}  // namespace aw
