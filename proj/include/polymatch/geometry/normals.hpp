#pragma once

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

/// Unit vertex normals.
///
/// Meshes: area-weighted average of incident face normals. A vertex whose
/// incident faces are all degenerate (zero area) is an error naming the
/// vertex.
///
/// Clouds: smallest principal direction of the local neighbourhood
/// covariance, with signs made consistent along a spanning tree of the
/// neighbour graph.
Eigen::MatrixX3d vertex_normals(const TriMesh &mesh);
Eigen::MatrixX3d vertex_normals(const PointCloud &cloud);
Eigen::MatrixX3d vertex_normals(const Shape &shape);

} // namespace polymatch
