#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <vector>

#include "aw/element.hpp"
#include "aw/fields.hpp"
#include "aw/material.hpp"
#include "aw/neumann.hpp"

namespace aw {

// Trace data of u_D along a boundary edge point: value and the first two
// arclength derivatives. The derivatives feed the estimator's Dirichlet
// terms; assembly itself only uses the value.
struct EdgeTrace {
    Vec2 value;
    Vec2 d_ds;
    Vec2 d2_ds2;
};

struct DirichletData {
    std::function<Vec2(const Vec2&)> value;
    std::function<EdgeTrace(const Vec2&, const Vec2&)> trace;  // (point, tau)

    static DirichletData zero() {
        DirichletData d;
        d.value = [](const Vec2&) { return Vec2{0.0, 0.0}; };
        d.trace = [](const Vec2&, const Vec2&) { return EdgeTrace{}; };
        return d;
    }
};

struct ProblemData {
    std::function<Vec2(const Vec2&)> f;
    TractionFn g;
    DirichletData u_D = DirichletData::zero();
    int volume_degree = 10;  // quadrature for data integrals over triangles
    int edge_degree = 12;    // quadrature for data integrals along edges

    static ProblemData with_zero_data() {
        ProblemData pd;
        pd.f = [](const Vec2&) { return Vec2{0.0, 0.0}; };
        pd.g = [](const Vec2&, const Vec2&) { return Vec2{0.0, 0.0}; };
        return pd;
    }
};

// Reduced saddle-point system
//   [ A  B ] [ s ]   [ b1 ]
//   [ B^T 0 ] [ u ] = [ b2 ]
// with A the C^{-1} mass matrix on the free Arnold-Winther dofs, B the
// divergence coupling and b2 = -\int f v (so that div sigma_h = -Pi_1 f).
// Neumann dofs are eliminated: every raw stress dof is an affine function of
// the reduced unknowns.
struct AssembledSystem {
    struct RawDofMap {
        double fixed = 0.0;
        std::vector<std::pair<int, double>> terms;  // (reduced index, coefficient)
    };

    const Triangulation* mesh = nullptr;
    LameParameters params;
    Eigen::SparseMatrix<double> K;
    Eigen::VectorXd rhs;
    std::vector<RawDofMap> stress_map;  // raw stress dof -> reduced combination
    int n_reduced_stress = 0;
    int n_disp = 0;

    int reduced_dim() const { return n_reduced_stress + n_disp; }

    Eigen::VectorXd expand_stress(const Eigen::VectorXd& reduced) const {
        Eigen::VectorXd raw(stress_map.size());
        for (std::size_t i = 0; i < stress_map.size(); ++i) {
            double v = stress_map[i].fixed;
            for (const auto& [j, c] : stress_map[i].terms) v += c * reduced[j];
            raw[static_cast<int>(i)] = v;
        }
        return raw;
    }
};

inline AssembledSystem assemble(const Triangulation& mesh, const LameParameters& params,
                                const ProblemData& pd, const NeumannData& neumann) {
    bool has_dirichlet = false;
    for (const Edge& e : mesh.edges())
        if (e.is_boundary() && e.kind == BoundaryKind::Dirichlet) has_dirichlet = true;
    if (!has_dirichlet)
        throw SolveError("assemble: pure Neumann problems are unsupported (empty Dirichlet boundary)");

    const DofMap dm(mesh);
    AssembledSystem sys;
    sys.mesh = &mesh;
    sys.params = params;
    sys.n_disp = dm.n_disp();
    sys.stress_map.assign(dm.n_stress(), {});

    // reduced numbering: vertices, then edges, then interiors, skipping the
    // eliminated Neumann directions
    int next = 0;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const auto it = neumann.vertex.find(v);
        if (it == neumann.vertex.end()) {
            for (int c = 0; c < 3; ++c) {
                auto& m = sys.stress_map[dm.vertex_dof(v, c)];
                m.terms.emplace_back(next++, 1.0);
            }
            continue;
        }
        const auto& vc = it->second;
        const int nfree = static_cast<int>(vc.nullspace.cols());
        const int base = next;
        next += nfree;
        for (int c = 0; c < 3; ++c) {
            auto& m = sys.stress_map[dm.vertex_dof(v, c)];
            m.fixed = vc.particular[c];
            for (int j = 0; j < nfree; ++j)
                if (vc.nullspace(c, j) != 0.0) m.terms.emplace_back(base + j, vc.nullspace(c, j));
        }
    }
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const auto it = neumann.edge_moments.find(e);
        for (int k = 0; k < 4; ++k) {
            auto& m = sys.stress_map[dm.edge_dof(e, k)];
            if (it != neumann.edge_moments.end())
                m.fixed = it->second[k];
            else
                m.terms.emplace_back(next++, 1.0);
        }
    }
    for (int t = 0; t < mesh.num_triangles(); ++t)
        for (int c = 0; c < 3; ++c) sys.stress_map[dm.interior_dof(t, c)].terms.emplace_back(next++, 1.0);
    sys.n_reduced_stress = next;

    const int n = sys.reduced_dim();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 900);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    auto scatter_ss = [&](int raw_i, int raw_j, double a) {
        const auto& mi = sys.stress_map[raw_i];
        const auto& mj = sys.stress_map[raw_j];
        for (const auto& [ri, ci] : mi.terms) {
            for (const auto& [rj, cj] : mj.terms) trip.emplace_back(ri, rj, ci * cj * a);
            if (mj.fixed != 0.0) rhs[ri] -= ci * a * mj.fixed;
        }
    };
    auto scatter_su = [&](int raw_i, int disp_j, double a) {
        const auto& mi = sys.stress_map[raw_i];
        const int cj = sys.n_reduced_stress + disp_j;
        for (const auto& [ri, ci] : mi.terms) {
            trip.emplace_back(ri, cj, ci * a);
            trip.emplace_back(cj, ri, ci * a);
        }
        if (mi.fixed != 0.0) rhs[cj] -= a * mi.fixed;
    };

    const TriangleRule& arule = TriangleRule::for_degree(6);
    const TriangleRule& brule = TriangleRule::for_degree(2);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const AWLocalBasis basis = build_local_basis(mesh, t);
        const auto gdofs = dm.stress_dofs(mesh, t);
        const auto c = mesh.tri_coords(t);
        const double area = mesh.area(t);

        // A_loc(i,j) = \int_T basis_i : C^{-1} basis_j
        Eigen::Matrix<double, 24, 24> A_loc = Eigen::Matrix<double, 24, 24>::Zero();
        for (std::size_t q = 0; q < arule.weights.size(); ++q) {
            const auto& l = arule.barycentric[q];
            const Vec2 p = c[0] * l[0] + c[1] * l[1] + c[2] * l[2];
            SymMat2 val[24];
            for (int j = 0; j < 24; ++j) val[j] = basis.value(j, p);
            const double w = arule.weights[q] * area;
            for (int i = 0; i < 24; ++i) {
                const SymMat2 ci = apply_Cinv(params, val[i]);
                A_loc(i, i) += w * ci.ddot(val[i]);
                for (int j = i + 1; j < 24; ++j) {
                    const double a = w * ci.ddot(val[j]);
                    A_loc(i, j) += a;
                    A_loc(j, i) += a;
                }
            }
        }
        // B_loc(i,k) = \int_T div(basis_i) . v_k, v_k the local P1 basis
        Eigen::Matrix<double, 24, 6> B_loc = Eigen::Matrix<double, 24, 6>::Zero();
        for (std::size_t q = 0; q < brule.weights.size(); ++q) {
            const auto& l = brule.barycentric[q];
            const Vec2 p = c[0] * l[0] + c[1] * l[1] + c[2] * l[2];
            const Vec2 lp = basis.frame.to_local(p);
            const double w = brule.weights[q] * area;
            const double shp[3] = {1.0, lp.x, lp.y};
            for (int i = 0; i < 24; ++i) {
                const Vec2 dv = basis.divergence(i, p);
                for (int k = 0; k < 3; ++k) {
                    B_loc(i, k) += w * dv.x * shp[k];
                    B_loc(i, 3 + k) += w * dv.y * shp[k];
                }
            }
        }
        // load: b2_k = -\int_T f . v_k
        Eigen::Matrix<double, 6, 1> load = Eigen::Matrix<double, 6, 1>::Zero();
        const TriangleRule& frule = TriangleRule::for_degree(pd.volume_degree);
        for (std::size_t q = 0; q < frule.weights.size(); ++q) {
            const auto& l = frule.barycentric[q];
            const Vec2 p = c[0] * l[0] + c[1] * l[1] + c[2] * l[2];
            const Vec2 lp = basis.frame.to_local(p);
            const Vec2 fv = pd.f(p);
            const double w = frule.weights[q] * area;
            const double shp[3] = {1.0, lp.x, lp.y};
            for (int k = 0; k < 3; ++k) {
                load[k] -= w * fv.x * shp[k];
                load[3 + k] -= w * fv.y * shp[k];
            }
        }
        // Dirichlet boundary: b1_i = \int_E u_D . (basis_i nu)
        Eigen::Matrix<double, 24, 1> bd = Eigen::Matrix<double, 24, 1>::Zero();
        for (int le = 0; le < 3; ++le) {
            const Edge& e = mesh.edge(mesh.tri_edges(t)[le]);
            if (!e.is_boundary() || e.kind != BoundaryKind::Dirichlet) continue;
            const EdgeRule& erule = EdgeRule::for_degree(pd.edge_degree);
            const Vec2 pa = mesh.vertex(e.a), pb = mesh.vertex(e.b);
            for (std::size_t q = 0; q < erule.points.size(); ++q) {
                const Vec2 p = pa + (pb - pa) * erule.points[q];
                const Vec2 ud = pd.u_D.value(p);
                const double w = erule.weights[q] * e.frame.length;
                for (int i = 0; i < 24; ++i)
                    bd[i] += w * ud.dot(basis.value(i, p).apply(e.frame.nu));
            }
        }

        for (int i = 0; i < 24; ++i) {
            for (int j = 0; j < 24; ++j)
                if (A_loc(i, j) != 0.0) scatter_ss(gdofs[i], gdofs[j], A_loc(i, j));
            for (int k = 0; k < 6; ++k)
                if (B_loc(i, k) != 0.0) scatter_su(gdofs[i], dm.disp_dof(t, k), B_loc(i, k));
            for (const auto& [ri, ci] : sys.stress_map[gdofs[i]].terms) rhs[ri] += ci * bd[i];
        }
        for (int k = 0; k < 6; ++k) rhs[sys.n_reduced_stress + dm.disp_dof(t, k)] += load[k];
    }

    sys.K.resize(n, n);
    sys.K.setFromTriplets(trip.begin(), trip.end());
    sys.K.makeCompressed();
    sys.rhs = std::move(rhs);
    return sys;
}

struct Solution {
    StressField sigma;
    DisplacementField u;
    double rel_residual = 0.0;
};

inline Solution solve(const AssembledSystem& sys) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(sys.K);
    lu.factorize(sys.K);
    if (lu.info() != Eigen::Success) throw SolveError("solve: singular factorization");
    Eigen::VectorXd x = lu.solve(sys.rhs);
    const double bnorm = std::max(sys.rhs.norm(), 1e-300);
    for (int it = 0; it < 2 && (sys.K * x - sys.rhs).norm() / bnorm > 1e-12; ++it)
        x += lu.solve(sys.rhs - sys.K * x);
    const double rel = (sys.K * x - sys.rhs).norm() / bnorm;
    if (!(rel < 1e-10)) throw SolveError("solve: relative residual " + std::to_string(rel));

    Solution sol;
    sol.rel_residual = rel;
    const Eigen::VectorXd raw_stress = sys.expand_stress(x.head(sys.n_reduced_stress));
    sol.sigma = extract_stress_field(*sys.mesh, raw_stress);
    sol.u.mesh = sys.mesh;
    sol.u.dofs = x.tail(sys.n_disp);
    sol.u.frames = sol.sigma.frames;
    return sol;
}

}  // namespace aw
