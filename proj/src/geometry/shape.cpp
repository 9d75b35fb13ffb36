#include "polymatch/geometry/shape.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polymatch {

void validate_mesh(const TriMesh &mesh, const std::string &context)
{
    const int n = mesh.vertex_count();
    if (n == 0)
        throw Error(context + ": empty geometry (no vertices)");

    std::map<std::pair<int, int>, int> edge_count;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto face = mesh.faces.row(f);
        for (int k = 0; k < 3; ++k) {
            const int idx = face(k);
            if (idx < 0 || idx >= n)
                throw Error(context + ": face " + std::to_string(f) +
                            ": index out of range (" + std::to_string(idx) +
                            " not in [0, " + std::to_string(n) + "))");
        }
        if (face(0) == face(1) || face(1) == face(2) || face(0) == face(2))
            throw Error(context + ": face " + std::to_string(f) +
                        ": repeated vertex index");
        for (int k = 0; k < 3; ++k) {
            const int a = face(k), b = face((k + 1) % 3);
            auto key = std::minmax(a, b);
            if (++edge_count[key] > 2)
                throw Error(context + ": edge (" + std::to_string(key.first) +
                            ", " + std::to_string(key.second) +
                            ") shared by more than two faces");
        }
    }
}

TriMesh make_mesh(Eigen::MatrixX3d vertices, Eigen::MatrixX3i faces,
                  const std::string &context)
{
    TriMesh mesh{std::move(vertices), std::move(faces)};
    validate_mesh(mesh, context);
    return mesh;
}

PointCloud make_cloud(Eigen::MatrixX3d points, int k)
{
    if (points.rows() == 0)
        throw Error("cloud: empty geometry (no points)");
    if (k < 1)
        throw Error("cloud: neighbour count k must be >= 1");

    const int n = static_cast<int>(points.rows());
    PointCloud cloud;
    cloud.points = std::move(points);
    cloud.neighbours.assign(n, {});

    const int kk = std::min(k, n - 1);
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            dist[j] = {(cloud.points.row(i) - cloud.points.row(j)).norm(), j};
        dist[i].first = std::numeric_limits<double>::infinity();
        std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
        for (int m = 0; m < kk; ++m)
            cloud.neighbours[i].emplace_back(dist[m].second, dist[m].first);
    }

    // Symmetrise: if i lists j, j lists i.
    for (int i = 0; i < n; ++i) {
        for (const auto &[j, d] : cloud.neighbours[i]) {
            auto &back = cloud.neighbours[j];
            bool found = false;
            for (const auto &[jj, dd] : back)
                if (jj == i) {
                    found = true;
                    break;
                }
            if (!found)
                back.emplace_back(i, d);
        }
    }
    for (auto &list : cloud.neighbours)
        std::sort(list.begin(), list.end());
    return cloud;
}

VertexGraph vertex_graph(const TriMesh &mesh)
{
    VertexGraph graph;
    graph.adjacency.assign(mesh.vertex_count(), {});
    std::map<std::pair<int, int>, double> edges;
    for (int f = 0; f < mesh.face_count(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const int a = mesh.faces(f, k), b = mesh.faces(f, (k + 1) % 3);
            auto key = std::minmax(a, b);
            if (!edges.count(key))
                edges[key] =
                    (mesh.vertices.row(a) - mesh.vertices.row(b)).norm();
        }
    }
    for (const auto &[key, len] : edges) {
        graph.adjacency[key.first].emplace_back(key.second, len);
        graph.adjacency[key.second].emplace_back(key.first, len);
    }
    for (auto &list : graph.adjacency)
        std::sort(list.begin(), list.end());
    return graph;
}

VertexGraph vertex_graph(const PointCloud &cloud)
{
    VertexGraph graph;
    graph.adjacency = cloud.neighbours;
    return graph;
}

VertexGraph vertex_graph(const Shape &shape)
{
    if (std::holds_alternative<TriMesh>(shape))
        return vertex_graph(std::get<TriMesh>(shape));
    return vertex_graph(std::get<PointCloud>(shape));
}

int VertexGraph::component_count() const
{
    const int n = vertex_count();
    std::vector<int> label(n, -1);
    int components = 0;
    std::vector<int> stack;
    for (int seed = 0; seed < n; ++seed) {
        if (label[seed] >= 0)
            continue;
        stack.push_back(seed);
        label[seed] = components;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto &[w, len] : adjacency[v])
                if (label[w] < 0) {
                    label[w] = components;
                    stack.push_back(w);
                }
        }
        ++components;
    }
    return components;
}

Eigen::MatrixX3d triangle_centroids(const TriMesh &mesh)
{
    Eigen::MatrixX3d centroids(mesh.face_count(), 3);
    for (int f = 0; f < mesh.face_count(); ++f)
        centroids.row(f) = (mesh.vertices.row(mesh.faces(f, 0)) +
                            mesh.vertices.row(mesh.faces(f, 1)) +
                            mesh.vertices.row(mesh.faces(f, 2))) /
                           3.0;
    return centroids;
}

std::vector<std::vector<int>> vertex_face_incidence(const TriMesh &mesh)
{
    std::vector<std::vector<int>> incidence(mesh.vertex_count());
    for (int f = 0; f < mesh.face_count(); ++f)
        for (int k = 0; k < 3; ++k)
            incidence[mesh.faces(f, k)].push_back(f);
    for (auto &list : incidence) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return incidence;
}

std::vector<int> adjacent_faces(const TriMesh &mesh, int vertex)
{
    if (vertex < 0 || vertex >= mesh.vertex_count())
        throw Error("adjacent_faces: vertex index out of range");
    std::vector<int> faces;
    for (int f = 0; f < mesh.face_count(); ++f)
        for (int k = 0; k < 3; ++k)
            if (mesh.faces(f, k) == vertex) {
                faces.push_back(f);
                break;
            }
    return faces;
}

FaceAdjacency face_adjacency(const TriMesh &mesh)
{
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int f = 0; f < mesh.face_count(); ++f)
        for (int k = 0; k < 3; ++k) {
            const int a = mesh.faces(f, k), b = mesh.faces(f, (k + 1) % 3);
            edge_faces[std::minmax(a, b)].push_back(f);
        }

    FaceAdjacency adjacency;
    for (const auto &[edge, faces] : edge_faces) {
        if (faces.size() != 2)
            continue; // boundary edge
        const double len =
            (mesh.vertices.row(edge.first) - mesh.vertices.row(edge.second))
                .norm();
        if (!(len > 0.0))
            throw Error("face_adjacency: zero-length shared edge (" +
                        std::to_string(edge.first) + ", " +
                        std::to_string(edge.second) + ")");
        adjacency.pairs.push_back(
            {std::min(faces[0], faces[1]), std::max(faces[0], faces[1]), len});
    }
    std::sort(adjacency.pairs.begin(), adjacency.pairs.end(),
              [](const FacePair &a, const FacePair &b) {
                  return std::tie(a.p, a.q) < std::tie(b.p, b.q);
              });
    return adjacency;
}

} // namespace polymatch
