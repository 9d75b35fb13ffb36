#pragma once

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

/// Convex polyhedron locally approximating the target surface around one
/// control point. Row 0 is always the anchor control point itself.
struct ConvexPolyhedron {
    Eigen::MatrixX3d vertices;      // d_j x 3
    std::vector<int> vertex_indices; // source vertex ids, parallel to rows
    int anchor = 0;                  // index of the owning control point in J
    int ring_level = 0;              // largest ring level t that qualified

    int size() const { return static_cast<int>(vertices.rows()); }
};

/// Column-wise mean absolute deviation about the column mean.
Eigen::RowVector3d mad(const Eigen::MatrixX3d &normals);

/// Grows t-ring neighbourhoods of `control_vertex` (graph hops) while the
/// maximum MAD component of the ring's normals stays <= eta. Returns the
/// vertex set of the largest qualifying ring; if even the 1-ring fails the
/// planarity criterion the result is the single control point.
ConvexPolyhedron grow_polyhedron(const VertexGraph &graph,
                                 const Eigen::MatrixX3d &positions,
                                 const Eigen::MatrixX3d &normals,
                                 int control_vertex, int anchor_in_J,
                                 double eta);

/// Two pruning stages: (1) project onto the dominant principal plane and
/// drop every vertex strictly inside the 2D convex hull (skipped for
/// degenerate, collinear sets); (2) keep the anchor control point plus up
/// to four more points chosen by geodesic farthest point sampling seeded at
/// the anchor. Result has between 1 and 5 rows.
ConvexPolyhedron prune_polyhedron(const ConvexPolyhedron &poly,
                                  const VertexGraph &graph);

/// Grow + prune for every control point.
std::vector<ConvexPolyhedron>
build_polyhedra(const Shape &shape, const std::vector<int> &control_points,
                double eta);

/// Single-point polyhedra (d_j = 1), for matching control points directly.
std::vector<ConvexPolyhedron>
point_polyhedra(const Shape &shape, const std::vector<int> &control_points);

/// Debug dump (anchor index and vertex coordinates per polyhedron).
std::string polyhedra_to_json(const std::vector<ConvexPolyhedron> &polyhedra);

} // namespace polymatch
