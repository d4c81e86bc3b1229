#pragma once

#include <array>

#include "aw/mesh.hpp"

namespace aw {

// Global numbering of the lowest-order Arnold-Winther stress space and the
// discontinuous P1 displacement space.
//
// Stress dofs: 3 per vertex (the components s11, s12, s22 of sigma at the
// vertex), 4 per edge (degree-0 and degree-1 moments of both components of
// sigma*nu in the edge's own frame), 3 per triangle (component averages).
// Sharing the vertex and edge dofs across triangles enforces vertex
// continuity and H(div) conformity.
//
// Displacement dofs: 6 per triangle (components times {1, xi, eta} in the
// triangle's local frame), private per triangle.
class DofMap {
public:
    explicit DofMap(const Triangulation& mesh)
        : n_vertices_(mesh.num_vertices()),
          n_edges_(mesh.num_edges()),
          n_tris_(mesh.num_triangles()) {}

    int n_stress() const { return 3 * n_vertices_ + 4 * n_edges_ + 3 * n_tris_; }
    int n_disp() const { return 6 * n_tris_; }

    int vertex_dof(int v, int comp) const { return 3 * v + comp; }
    // k: 0 = moment-0 of (sigma nu).x, 1 = moment-0 of (sigma nu).y,
    //    2 = moment-1 of (sigma nu).x, 3 = moment-1 of (sigma nu).y
    int edge_dof(int e, int k) const { return 3 * n_vertices_ + 4 * e + k; }
    int interior_dof(int t, int comp) const { return 3 * n_vertices_ + 4 * n_edges_ + 3 * t + comp; }
    int disp_dof(int t, int k) const { return 6 * t + k; }

    // Local stress dof order used by AWLocalBasis: vertex dofs (3 vertices x
    // 3 components), then edge dofs (edge opposite local vertex i, i = 0..2,
    // 4 each), then the 3 interior dofs.
    std::array<int, 24> stress_dofs(const Triangulation& mesh, int t) const {
        std::array<int, 24> g{};
        int n = 0;
        for (int lv = 0; lv < 3; ++lv)
            for (int c = 0; c < 3; ++c) g[n++] = vertex_dof(mesh.tri(t)[lv], c);
        for (int le = 0; le < 3; ++le)
            for (int k = 0; k < 4; ++k) g[n++] = edge_dof(mesh.tri_edges(t)[le], k);
        for (int c = 0; c < 3; ++c) g[n++] = interior_dof(t, c);
        return g;
    }

private:
    int n_vertices_;
    int n_edges_;
    int n_tris_;
};

}  // namespace aw
