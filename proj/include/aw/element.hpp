#pragma once

#include <Eigen/Dense>
#include <array>

#include "aw/dofmap.hpp"
#include "aw/mesh.hpp"
#include "aw/poly.hpp"
#include "aw/quadrature.hpp"

namespace aw {

// Local scaled coordinates xi = (x - center)/scale keep the basis systems
// well conditioned independently of the triangle size.
struct LocalFrame {
    Vec2 center;
    double scale = 1.0;

    Vec2 to_local(const Vec2& p) const { return (p - center) / scale; }
};

inline LocalFrame local_frame(const Triangulation& mesh, int t) {
    const auto c = mesh.tri_coords(t);
    return {(c[0] + c[1] + c[2]) / 3.0, mesh.diameter(t)};
}

namespace detail {

// P3 monomial basis [1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3]
constexpr int kP3 = 10;

inline void p3_eval(const Vec2& p, double m[kP3]) {
    m[0] = 1.0;
    m[1] = p.x;
    m[2] = p.y;
    m[3] = p.x * p.x;
    m[4] = p.x * p.y;
    m[5] = p.y * p.y;
    m[6] = m[3] * p.x;
    m[7] = m[3] * p.y;
    m[8] = p.x * m[5];
    m[9] = m[5] * p.y;
}

// Nullspace of the six linear constraints "div tau has no quadratic part"
// on P3 symmetric fields, written in any affine coordinate system. The 20
// monomial fields that never enter the constraints come first, then four
// hand-solved combinations among the ten constrained coefficients.
inline const Eigen::Matrix<double, 30, 24>& shape_space_basis() {
    static const Eigen::Matrix<double, 30, 24> N = [] {
        Eigen::Matrix<double, 30, 24> n = Eigen::Matrix<double, 30, 24>::Zero();
        int col = 0;
        auto idx = [](int comp, int mono) { return 10 * comp + mono; };
        // unconstrained coefficients: c11 of [0..5, 9], c12 of [0..5], c22 of [0..6]
        for (int mono : {0, 1, 2, 3, 4, 5, 9}) n(idx(0, mono), col++) = 1.0;
        for (int mono : {0, 1, 2, 3, 4, 5}) n(idx(1, mono), col++) = 1.0;
        for (int mono : {0, 1, 2, 3, 4, 5, 6}) n(idx(2, mono), col++) = 1.0;
        // constrained block: 3 a6 + b7 = 0, 2 a7 + 2 b8 = 0, a8 + 3 b9 = 0,
        //                    3 b6 + c7 = 0, 2 b7 + 2 c8 = 0, b8 + 3 c9 = 0
        // with a = c11[6..8], b = c12[6..9], c = c22[7..9]
        n(idx(1, 6), col) = 1.0;
        n(idx(2, 7), col++) = -3.0;
        n(idx(0, 6), col) = -1.0;
        n(idx(1, 7), col) = 3.0;
        n(idx(2, 8), col++) = -3.0;
        n(idx(0, 7), col) = -3.0;
        n(idx(1, 8), col) = 3.0;
        n(idx(2, 9), col++) = -1.0;
        n(idx(0, 8), col) = -3.0;
        n(idx(1, 9), col++) = 1.0;
        return n;
    }();
    return N;
}

}  // namespace detail

// Shape functions of the lowest-order Arnold-Winther stress element on one
// physical triangle: 24 P3 symmetric-matrix fields with P1 divergence, dual
// to the vertex/edge/interior dofs of DofMap. Coefficients live in the local
// frame; column j of `coeff` holds [c11(10), c12(10), c22(10)] of basis j.
struct AWLocalBasis {
    LocalFrame frame;
    Eigen::Matrix<double, 30, 24> coeff;

    SymMat2 value(int j, const Vec2& phys) const {
        double m[detail::kP3];
        detail::p3_eval(frame.to_local(phys), m);
        double c[3] = {0.0, 0.0, 0.0};
        for (int comp = 0; comp < 3; ++comp)
            for (int k = 0; k < detail::kP3; ++k) c[comp] += coeff(10 * comp + k, j) * m[k];
        return {c[0], c[1], c[2]};
    }

    // divergence of basis j, a physical P1 vector field
    Vec2 divergence(int j, const Vec2& phys) const {
        const Vec2 q = frame.to_local(phys);
        auto comp = [&](int c, int mono) { return coeff(10 * c + mono, j); };
        auto ddx = [&](int c, const Vec2& p) {
            return comp(c, 1) + 2.0 * comp(c, 3) * p.x + comp(c, 4) * p.y + 3.0 * comp(c, 6) * p.x * p.x +
                   2.0 * comp(c, 7) * p.x * p.y + comp(c, 8) * p.y * p.y;
        };
        auto ddy = [&](int c, const Vec2& p) {
            return comp(c, 2) + comp(c, 4) * p.x + 2.0 * comp(c, 5) * p.y + comp(c, 7) * p.x * p.x +
                   2.0 * comp(c, 8) * p.x * p.y + 3.0 * comp(c, 9) * p.y * p.y;
        };
        return Vec2{ddx(0, q) + ddy(1, q), ddx(1, q) + ddy(2, q)} / frame.scale;
    }
};

// Evaluates the 24 dof functionals on a trial field given by its local-frame
// coefficient vector; returns the 24x30 functional matrix.
namespace detail {

inline Eigen::Matrix<double, 24, 30> dof_functionals(const Triangulation& mesh, int t,
                                                     const LocalFrame& frame) {
    Eigen::Matrix<double, 24, 30> D = Eigen::Matrix<double, 24, 30>::Zero();
    double m[kP3];
    int row = 0;
    // vertex values
    for (int lv = 0; lv < 3; ++lv) {
        p3_eval(frame.to_local(mesh.vertex(mesh.tri(t)[lv])), m);
        for (int comp = 0; comp < 3; ++comp, ++row)
            for (int k = 0; k < kP3; ++k) D(row, 10 * comp + k) = m[k];
    }
    // edge moments in the edge's own frame and orientation:
    //   (1/h_E) \int_E (sigma nu)_c q_i ds, q_0 = 1, q_1(s) = s/h_E - 1/2
    const EdgeRule& rule = EdgeRule::for_degree(7);
    for (int le = 0; le < 3; ++le) {
        const Edge& e = mesh.edge(mesh.tri_edges(t)[le]);
        const Vec2 pa = mesh.vertex(e.a), pb = mesh.vertex(e.b);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q];
            const double w = rule.weights[q];
            p3_eval(frame.to_local(pa + (pb - pa) * s), m);
            const double q1 = s - 0.5;
            for (int k = 0; k < kP3; ++k) {
                const double mk = w * m[k];
                // (sigma nu).x = s11 nu.x + s12 nu.y ; (sigma nu).y = s12 nu.x + s22 nu.y
                D(row + 0, 0 * 10 + k) += mk * e.frame.nu.x;
                D(row + 0, 1 * 10 + k) += mk * e.frame.nu.y;
                D(row + 1, 1 * 10 + k) += mk * e.frame.nu.x;
                D(row + 1, 2 * 10 + k) += mk * e.frame.nu.y;
                D(row + 2, 0 * 10 + k) += mk * q1 * e.frame.nu.x;
                D(row + 2, 1 * 10 + k) += mk * q1 * e.frame.nu.y;
                D(row + 3, 1 * 10 + k) += mk * q1 * e.frame.nu.x;
                D(row + 3, 2 * 10 + k) += mk * q1 * e.frame.nu.y;
            }
        }
        row += 4;
    }
    // interior component averages
    const TriangleRule& trule = TriangleRule::for_degree(3);
    const auto c = mesh.tri_coords(t);
    for (std::size_t q = 0; q < trule.weights.size(); ++q) {
        const auto& l = trule.barycentric[q];
        p3_eval(frame.to_local(c[0] * l[0] + c[1] * l[1] + c[2] * l[2]), m);
        for (int comp = 0; comp < 3; ++comp)
            for (int k = 0; k < kP3; ++k) D(row + comp, 10 * comp + k) += trule.weights[q] * m[k];
    }
    return D;
}

}  // namespace detail

// Builds the dual basis by solving the 24x24 duality system against the
// divergence-constraint nullspace. Throws on (near-)degenerate triangles.
inline AWLocalBasis build_local_basis(const Triangulation& mesh, int t) {
    AWLocalBasis basis;
    basis.frame = local_frame(mesh, t);
    const auto& N = detail::shape_space_basis();
    const Eigen::Matrix<double, 24, 30> D = detail::dof_functionals(mesh, t, basis.frame);
    const Eigen::Matrix<double, 24, 24> M = D * N;
    Eigen::PartialPivLU<Eigen::Matrix<double, 24, 24>> lu(M);
    const Eigen::Matrix<double, 24, 24> X = lu.solve(Eigen::Matrix<double, 24, 24>::Identity());
    const double resid = (M * X - Eigen::Matrix<double, 24, 24>::Identity()).cwiseAbs().maxCoeff();
    if (!(resid < 1e-7))
        throw MeshError("build_local_basis: ill-conditioned dof system on triangle " +
                        std::to_string(t));
    basis.coeff = N * X;
    return basis;
}

}  // namespace aw
