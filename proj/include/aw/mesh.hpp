#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aw/types.hpp"

namespace aw {

enum class BoundaryKind { Dirichlet, Neumann };

struct BoundaryEdgeSpec {
    int a = 0;
    int b = 0;
    BoundaryKind kind = BoundaryKind::Dirichlet;
    bool curved = false;  // eligible for project_boundary
};

// Unit frame of an edge. tau is exactly the +90-degree rotation of nu; on the
// boundary nu points outward, on interior edges from the lower-id triangle
// (T+) into the other (T-).
struct EdgeFrame {
    Vec2 nu;
    Vec2 tau;
    Vec2 mid;
    double length = 0.0;
};

struct Edge {
    int a = -1;  // endpoints ordered so that (b-a)/|b-a| == tau
    int b = -1;
    int tri_plus = -1;
    int tri_minus = -1;  // -1 on the boundary
    BoundaryKind kind = BoundaryKind::Dirichlet;
    bool curved = false;
    EdgeFrame frame;

    bool is_boundary() const { return tri_minus < 0; }
};

// Conforming triangulation with oriented edges, boundary labels and
// newest-vertex-bisection refinement. Immutable after construction; refine
// and project_boundary return new meshes.
class Triangulation {
public:
    static Triangulation build(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                               const std::vector<BoundaryEdgeSpec>& boundary,
                               std::vector<int> refinement_vertex = {}) {
        Triangulation m;
        m.vertices_ = std::move(vertices);
        m.tris_ = std::move(triangles);
        const int nv = static_cast<int>(m.vertices_.size());
        for (std::size_t t = 0; t < m.tris_.size(); ++t) {
            for (int k : m.tris_[t])
                if (k < 0 || k >= nv) throw MeshError("build: triangle references invalid vertex");
            if (m.signed_area(static_cast<int>(t)) <= 0.0)
                throw MeshError("build: inverted or degenerate triangle " + std::to_string(t));
        }
        if (refinement_vertex.empty()) {
            for (std::size_t t = 0; t < m.tris_.size(); ++t)
                refinement_vertex.push_back(m.longest_edge_opposite(static_cast<int>(t)));
        }
        if (refinement_vertex.size() != m.tris_.size())
            throw MeshError("build: refinement vertex list size mismatch");
        m.refinement_vertex_ = std::move(refinement_vertex);
        m.build_edges(boundary);
        return m;
    }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_triangles() const { return static_cast<int>(tris_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const Vec2& vertex(int v) const { return vertices_[v]; }
    const std::array<int, 3>& tri(int t) const { return tris_[t]; }
    const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    // edge ids per triangle; entry i is the edge opposite local vertex i
    const std::array<int, 3>& tri_edges(int t) const { return tri_edges_[t]; }
    int refinement_vertex(int t) const { return refinement_vertex_[t]; }

    std::array<Vec2, 3> tri_coords(int t) const {
        return {vertices_[tris_[t][0]], vertices_[tris_[t][1]], vertices_[tris_[t][2]]};
    }
    double signed_area(int t) const {
        const auto& v = tris_[t];
        return 0.5 * (vertices_[v[1]] - vertices_[v[0]]).cross(vertices_[v[2]] - vertices_[v[0]]);
    }
    double area(int t) const { return signed_area(t); }
    double diameter(int t) const {
        const auto c = tri_coords(t);
        return std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
    }
    double max_diameter() const {
        double h = 0.0;
        for (int t = 0; t < num_triangles(); ++t) h = std::max(h, diameter(t));
        return h;
    }

    // Smallest interior angle over all triangles, in radians.
    double shape_regularity() const {
        double amin = M_PI;
        for (int t = 0; t < num_triangles(); ++t) {
            const auto c = tri_coords(t);
            for (int k = 0; k < 3; ++k) {
                const Vec2 u = c[(k + 1) % 3] - c[k];
                const Vec2 w = c[(k + 2) % 3] - c[k];
                amin = std::min(amin, std::atan2(std::abs(u.cross(w)), u.dot(w)));
            }
        }
        return amin;
    }

    // Bisect the refinement edge of every marked triangle; closure keeps the
    // mesh conforming. Labels and curved flags are inherited.
    Triangulation refine(const std::vector<int>& marked_tris) const {
        std::vector<char> edge_marked(edges_.size(), 0);
        for (int t : marked_tris) {
            if (t < 0 || t >= num_triangles()) throw MeshError("refine: marked triangle out of range");
            edge_marked[refinement_edge(t)] = 1;
        }
        return refine_edges(edge_marked);
    }

    // Red-equivalent uniform refinement: every edge is bisected, every
    // triangle splits into four and the mesh size halves.
    Triangulation refine_uniform() const {
        return refine_edges(std::vector<char>(edges_.size(), 1));
    }

    // Projects every vertex lying on a curved boundary edge with the given
    // map (idempotent for points already on the curve). Throws if the
    // projected mesh would contain an inverted triangle.
    Triangulation project_boundary(const std::function<Vec2(const Vec2&)>& project) const {
        std::vector<Vec2> verts = vertices_;
        for (const Edge& e : edges_) {
            if (!e.is_boundary() || !e.curved) continue;
            verts[e.a] = project(vertices_[e.a]);
            verts[e.b] = project(vertices_[e.b]);
        }
        Triangulation out;
        try {
            out = build(std::move(verts), tris_, boundary_specs(), refinement_vertex_);
        } catch (const MeshError& err) {
            throw MeshError(std::string("project_boundary: projection would invert the mesh (") +
                            err.what() + "); refine before projecting");
        }
        return out;
    }

    std::vector<BoundaryEdgeSpec> boundary_specs() const {
        std::vector<BoundaryEdgeSpec> specs;
        for (const Edge& e : edges_)
            if (e.is_boundary()) specs.push_back({e.a, e.b, e.kind, e.curved});
        return specs;
    }

    // Structural invariants; returns a description of the first violation or
    // an empty string. Euler's relation assumes a simply-connected domain.
    std::string validate() const {
        for (int t = 0; t < num_triangles(); ++t)
            if (signed_area(t) <= 0.0) return "triangle " + std::to_string(t) + " not ccw";
        const int euler = num_vertices() - num_edges() + num_triangles();
        if (euler != 1) return "Euler relation violated: V-E+T = " + std::to_string(euler);
        for (int e = 0; e < num_edges(); ++e) {
            const Edge& ed = edges_[e];
            const double nn = ed.frame.nu.norm(), tn = ed.frame.tau.norm();
            if (std::abs(nn - 1.0) > 1e-14 || std::abs(tn - 1.0) > 1e-14)
                return "edge frame not unit length";
            const Vec2 rt = rot90(ed.frame.nu);
            if (rt.x != ed.frame.tau.x || rt.y != ed.frame.tau.y) return "tau != rot90(nu)";
        }
        return {};
    }

private:
    static std::pair<int, int> edge_key(int p, int q) { return {std::min(p, q), std::max(p, q)}; }

    int local_index(int t, int v) const {
        for (int k = 0; k < 3; ++k)
            if (tris_[t][k] == v) return k;
        return -1;
    }

    int longest_edge_opposite(int t) const {
        const auto c = tri_coords(t);
        double best = -1.0;
        int arg = 0;
        for (int k = 0; k < 3; ++k) {
            const double len = (c[(k + 2) % 3] - c[(k + 1) % 3]).norm();
            if (len > best + 1e-15 * std::max(best, 0.0)) {
                best = len;
                arg = k;
            }
        }
        return arg;
    }

    int refinement_edge(int t) const { return tri_edges_[t][refinement_vertex_[t]]; }

    void build_edges(const std::vector<BoundaryEdgeSpec>& boundary) {
        edges_.clear();
        tri_edges_.assign(tris_.size(), {-1, -1, -1});
        // ordered map keyed by sorted endpoints for deterministic edge ids
        std::map<std::pair<int, int>, int> ids;
        struct Adj {
            int tris[2] = {-1, -1};
            int n = 0;
        };
        std::vector<Adj> adj;
        std::vector<std::pair<int, int>> keys;
        for (int t = 0; t < num_triangles(); ++t) {
            for (int k = 0; k < 3; ++k) {
                const int p = tris_[t][(k + 1) % 3];
                const int q = tris_[t][(k + 2) % 3];
                const auto key = edge_key(p, q);
                auto it = ids.find(key);
                if (it == ids.end()) {
                    it = ids.emplace(key, static_cast<int>(keys.size())).first;
                    keys.push_back(key);
                    adj.push_back({});
                }
                Adj& a = adj[it->second];
                if (a.n >= 2)
                    throw MeshError("build: non-manifold edge (" + std::to_string(key.first) + "," +
                                    std::to_string(key.second) + ")");
                a.tris[a.n++] = t;
            }
        }
        // re-key deterministically: sort by (min,max) endpoint pair
        std::vector<int> order(keys.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int l, int r) { return keys[l] < keys[r]; });

        std::map<std::pair<int, int>, BoundaryEdgeSpec> bspec;
        for (const auto& s : boundary) bspec[edge_key(s.a, s.b)] = s;

        edges_.reserve(keys.size());
        for (int idx : order) {
            const auto key = keys[idx];
            const Adj& a = adj[idx];
            Edge e;
            e.tri_plus = (a.n == 2) ? std::min(a.tris[0], a.tris[1]) : a.tris[0];
            e.tri_minus = (a.n == 2) ? std::max(a.tris[0], a.tris[1]) : -1;
            // ccw-ordered endpoints within T+; tau then runs a->b and
            // nu = (tau.y, -tau.x) points out of T+.
            const auto& tv = tris_[e.tri_plus];
            int la = -1;
            for (int k = 0; k < 3; ++k) {
                const int p = tv[k], q = tv[(k + 1) % 3];
                if (edge_key(p, q) == key) {
                    e.a = p;
                    e.b = q;
                    la = k;
                    break;
                }
            }
            if (la < 0) throw MeshError("build: internal edge orientation failure");
            const Vec2 d = vertices_[e.b] - vertices_[e.a];
            e.frame.length = d.norm();
            if (!(e.frame.length > 0.0)) throw MeshError("build: zero-length edge");
            e.frame.tau = d / e.frame.length;
            e.frame.nu = {e.frame.tau.y, -e.frame.tau.x};
            e.frame.mid = (vertices_[e.a] + vertices_[e.b]) * 0.5;
            if (a.n == 1) {
                auto it = bspec.find(key);
                if (it == bspec.end())
                    throw MeshError("build: unlabeled boundary edge (" + std::to_string(key.first) +
                                    "," + std::to_string(key.second) + ")");
                e.kind = it->second.kind;
                e.curved = it->second.curved;
            }
            const int eid = static_cast<int>(edges_.size());
            edges_.push_back(e);
            for (int s = 0; s < a.n; ++s) {
                const int t = a.tris[s];
                for (int k = 0; k < 3; ++k) {
                    const auto lk = edge_key(tris_[t][(k + 1) % 3], tris_[t][(k + 2) % 3]);
                    if (lk == key) tri_edges_[t][k] = eid;
                }
            }
        }
        for (const auto& s : boundary) {
            auto it = ids.find(edge_key(s.a, s.b));
            if (it == ids.end() || adj[it->second].n != 1)
                throw MeshError("build: boundary spec names a non-boundary edge (" +
                                std::to_string(s.a) + "," + std::to_string(s.b) + ")");
        }
    }

    Triangulation refine_edges(std::vector<char> edge_marked) const {
        // closure: a triangle with any marked edge must have its refinement
        // edge marked as well
        bool changed = true;
        while (changed) {
            changed = false;
            for (int t = 0; t < num_triangles(); ++t) {
                const int re = refinement_edge(t);
                if (edge_marked[re]) continue;
                for (int k = 0; k < 3; ++k)
                    if (edge_marked[tri_edges_[t][k]]) {
                        edge_marked[re] = 1;
                        changed = true;
                        break;
                    }
            }
        }

        std::vector<Vec2> verts = vertices_;
        std::vector<int> midpoint(edges_.size(), -1);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (!edge_marked[e]) continue;
            midpoint[e] = static_cast<int>(verts.size());
            verts.push_back((vertices_[edges_[e].a] + vertices_[edges_[e].b]) * 0.5);
        }

        std::vector<std::array<int, 3>> new_tris;
        std::vector<int> new_ref;
        for (int t = 0; t < num_triangles(); ++t) {
            const int r = refinement_vertex_[t];
            const int re = tri_edges_[t][r];
            if (!edge_marked[re]) {
                new_tris.push_back(tris_[t]);
                new_ref.push_back(r);
                continue;
            }
            // bisect at the refinement edge (a,b) opposite the newest vertex
            // z; the children inherit the parent's other edges as their
            // refinement edges, so a second bisection handles the remaining
            // marked edges and the recursion stops there.
            const int z = tris_[t][r];
            const int a = tris_[t][(r + 1) % 3];
            const int b = tris_[t][(r + 2) % 3];
            const int edge_z_a = tri_edges_[t][(r + 2) % 3];  // opposite b
            const int edge_z_b = tri_edges_[t][(r + 1) % 3];  // opposite a
            const int m = midpoint[re];
            if (edge_marked[edge_z_a]) {
                const int m2 = midpoint[edge_z_a];
                new_tris.push_back({m, z, m2});
                new_ref.push_back(2);
                new_tris.push_back({m, m2, a});
                new_ref.push_back(1);
            } else {
                new_tris.push_back({z, a, m});
                new_ref.push_back(2);
            }
            if (edge_marked[edge_z_b]) {
                const int m2 = midpoint[edge_z_b];
                new_tris.push_back({m, b, m2});
                new_ref.push_back(2);
                new_tris.push_back({m, m2, z});
                new_ref.push_back(1);
            } else {
                new_tris.push_back({z, m, b});
                new_ref.push_back(1);
            }
        }

        std::vector<BoundaryEdgeSpec> bnd;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const Edge& ed = edges_[e];
            if (!ed.is_boundary()) continue;
            if (edge_marked[e]) {
                bnd.push_back({ed.a, midpoint[e], ed.kind, ed.curved});
                bnd.push_back({midpoint[e], ed.b, ed.kind, ed.curved});
            } else {
                bnd.push_back({ed.a, ed.b, ed.kind, ed.curved});
            }
        }
        return build(std::move(verts), std::move(new_tris), bnd, std::move(new_ref));
    }

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> tris_;
    std::vector<int> refinement_vertex_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
};

// Line-oriented text format:
//   ntri-mesh 1
//   v x y
//   t i j k [r]
//   b i j D|N
inline void write_mesh(std::ostream& os, const Triangulation& m) {
    os << "ntri-mesh 1\n";
    os.precision(17);
    for (const Vec2& v : m.vertices()) os << "v " << v.x << " " << v.y << "\n";
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& tr = m.tri(t);
        os << "t " << tr[0] << " " << tr[1] << " " << tr[2] << " " << m.refinement_vertex(t) << "\n";
    }
    for (const Edge& e : m.edges()) {
        if (!e.is_boundary()) continue;
        os << "b " << e.a << " " << e.b << " " << (e.kind == BoundaryKind::Dirichlet ? "D" : "N")
           << "\n";
    }
}

inline Triangulation read_mesh(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw MeshError("read_mesh: empty stream");
    {
        std::istringstream hs(line);
        std::string magic;
        int version = 0;
        hs >> magic >> version;
        if (magic != "ntri-mesh" || version != 1) throw MeshError("read_mesh: bad header");
    }
    std::vector<Vec2> verts;
    std::vector<std::array<int, 3>> tris;
    std::vector<int> refv;
    std::vector<BoundaryEdgeSpec> bnd;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x = 0, y = 0;
            if (!(ls >> x >> y)) throw MeshError("read_mesh: malformed vertex line");
            verts.push_back({x, y});
        } else if (tag == "t") {
            int i = 0, j = 0, k = 0, r = -1;
            if (!(ls >> i >> j >> k)) throw MeshError("read_mesh: malformed triangle line");
            ls >> r;
            tris.push_back({i, j, k});
            refv.push_back(r);
        } else if (tag == "b") {
            int i = 0, j = 0;
            std::string kind;
            if (!(ls >> i >> j >> kind) || (kind != "D" && kind != "N"))
                throw MeshError("read_mesh: malformed boundary line");
            bnd.push_back({i, j, kind == "D" ? BoundaryKind::Dirichlet : BoundaryKind::Neumann});
        } else {
            throw MeshError("read_mesh: unknown record '" + tag + "'");
        }
    }
    const bool have_all_r = std::all_of(refv.begin(), refv.end(), [](int r) { return r >= 0 && r < 3; });
    return Triangulation::build(std::move(verts), std::move(tris), bnd,
                                have_all_r ? refv : std::vector<int>{});
}

}  // namespace aw
