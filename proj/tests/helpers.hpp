#pragma once

#include <vector>

#include "aw/mesh.hpp"

namespace aw::testing {

// unit square split along the diagonal 0-2, all-Dirichlet boundary
inline Triangulation unit_square(BoundaryKind kind = BoundaryKind::Dirichlet) {
    std::vector<Vec2> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}};
    std::vector<BoundaryEdgeSpec> b = {
        {0, 1, kind}, {1, 2, kind}, {2, 3, kind}, {3, 0, kind}};
    return Triangulation::build(v, t, b);
}

inline Triangulation reference_triangle() {
    std::vector<Vec2> v = {{0, 0}, {1, 0}, {0, 1}};
    std::vector<std::array<int, 3>> t = {{0, 1, 2}};
    std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Dirichlet},
                                       {1, 2, BoundaryKind::Dirichlet},
                                       {2, 0, BoundaryKind::Dirichlet}};
    return Triangulation::build(v, t, b);
}

// square with the left edge Dirichlet and the rest Neumann
inline Triangulation mixed_square() {
    std::vector<Vec2> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}};
    std::vector<BoundaryEdgeSpec> b = {{0, 1, BoundaryKind::Neumann},
                                       {1, 2, BoundaryKind::Neumann},
                                       {2, 3, BoundaryKind::Neumann},
                                       {3, 0, BoundaryKind::Dirichlet}};
    return Triangulation::build(v, t, b);
}

}  // namespace aw::testing
