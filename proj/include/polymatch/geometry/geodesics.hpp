#pragma once

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

/// Single-source shortest-path distances (Dijkstra). Vertices unreachable
/// from `source` come back as +infinity. Graph distances stand in for
/// geodesics throughout; this is an approximation of true polyhedral
/// geodesics, which is good enough for sampling and feature purposes.
std::vector<double> geodesic_distances(const VertexGraph &graph, int source);

/// Distance rows from several sources at once (one Dijkstra per source).
Eigen::MatrixXd geodesic_distance_rows(const VertexGraph &graph,
                                       const std::vector<int> &sources);

/// Greedy farthest point sampling under graph geodesic distance. The first
/// sample is `seed`; each following sample maximises the minimum distance
/// to the already chosen set, ties broken by lowest vertex index.
std::vector<int> farthest_point_sampling(const VertexGraph &graph, int count,
                                         int seed);

} // namespace polymatch
