#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace polymatch {

/// Error type for everything user-facing: parse failures, violated
/// invariants, bad indices. The message carries the offending location.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Triangular surface mesh. Vertices are rows of `vertices`, faces index
/// into them. Construction validates the invariants:
///   - all face indices in range,
///   - three distinct vertices per face,
///   - no edge shared by more than two faces.
struct TriMesh {
    Eigen::MatrixX3d vertices;
    Eigen::MatrixX3i faces;

    int vertex_count() const { return static_cast<int>(vertices.rows()); }
    int face_count() const { return static_cast<int>(faces.rows()); }
};

/// Point cloud with a symmetrised k-nearest-neighbour graph.
struct PointCloud {
    Eigen::MatrixX3d points;
    // neighbours[i] = sorted list of (neighbour index, Euclidean distance)
    std::vector<std::vector<std::pair<int, double>>> neighbours;

    int point_count() const { return static_cast<int>(points.rows()); }
};

using Shape = std::variant<TriMesh, PointCloud>;

inline const Eigen::MatrixX3d &shape_points(const Shape &shape)
{
    if (std::holds_alternative<TriMesh>(shape))
        return std::get<TriMesh>(shape).vertices;
    return std::get<PointCloud>(shape).points;
}

inline Eigen::MatrixX3d &shape_points(Shape &shape)
{
    if (std::holds_alternative<TriMesh>(shape))
        return std::get<TriMesh>(shape).vertices;
    return std::get<PointCloud>(shape).points;
}

/// Weighted adjacency lists over vertices; carrier for graph geodesics.
struct VertexGraph {
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    int vertex_count() const { return static_cast<int>(adjacency.size()); }
    /// Number of connected components (reported, never hidden).
    int component_count() const;
};

/// One adjacent triangle pair (p, q) with the length of their shared edge.
struct FacePair {
    int p = 0;
    int q = 0;
    double shared_edge_length = 0.0;
};

/// The set E of neighbouring triangle pairs; each unordered pair once.
struct FaceAdjacency {
    std::vector<FacePair> pairs;
};

/// Throws unless the mesh satisfies all TriMesh invariants.
void validate_mesh(const TriMesh &mesh, const std::string &context);

TriMesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces,
                  const std::string &context = "mesh");

/// Builds the symmetrised k-nearest-neighbour cloud (k >= 1).
PointCloud make_cloud(Eigen::MatrixX3d points, int k = 3);

/// Vertex graph with Euclidean edge lengths from mesh edges or the cloud
/// neighbour graph.
VertexGraph vertex_graph(const TriMesh &mesh);
VertexGraph vertex_graph(const PointCloud &cloud);
VertexGraph vertex_graph(const Shape &shape);

/// Centroids of all faces (arithmetic mean of the three corners).
Eigen::MatrixX3d triangle_centroids(const TriMesh &mesh);

/// Faces incident to vertex i, ascending.
std::vector<int> adjacent_faces(const TriMesh &mesh, int vertex);

/// All per-vertex incidence lists at once.
std::vector<std::vector<int>> vertex_face_incidence(const TriMesh &mesh);

/// Neighbouring triangle pairs with shared-edge lengths.
FaceAdjacency face_adjacency(const TriMesh &mesh);

} // namespace polymatch
