#include "polymatch/geometry/normals.hpp"

#include <Eigen/Eigenvalues>
#include <queue>

namespace polymatch {

Eigen::MatrixX3d vertex_normals(const TriMesh &mesh)
{
    Eigen::MatrixX3d normals = Eigen::MatrixX3d::Zero(mesh.vertex_count(), 3);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Eigen::RowVector3d a = mesh.vertices.row(mesh.faces(f, 0));
        const Eigen::RowVector3d b = mesh.vertices.row(mesh.faces(f, 1));
        const Eigen::RowVector3d c = mesh.vertices.row(mesh.faces(f, 2));
        // Cross product length is twice the face area, so summing the raw
        // cross products is the area weighting.
        const Eigen::RowVector3d weighted = (b - a).cross(c - a);
        for (int k = 0; k < 3; ++k)
            normals.row(mesh.faces(f, k)) += weighted;
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const double len = normals.row(v).norm();
        if (len <= 1e-300)
            throw Error("vertex_normals: zero-area umbrella at vertex " +
                        std::to_string(v));
        normals.row(v) /= len;
    }
    return normals;
}

Eigen::MatrixX3d vertex_normals(const PointCloud &cloud)
{
    const int n = cloud.point_count();
    Eigen::MatrixX3d normals(n, 3);
    for (int i = 0; i < n; ++i) {
        const auto &nbrs = cloud.neighbours[i];
        Eigen::MatrixX3d local(nbrs.size() + 1, 3);
        local.row(0) = cloud.points.row(i);
        for (size_t m = 0; m < nbrs.size(); ++m)
            local.row(static_cast<int>(m) + 1) =
                cloud.points.row(nbrs[m].first);
        const Eigen::RowVector3d mean = local.colwise().mean();
        local.rowwise() -= mean;
        const Eigen::Matrix3d covariance = local.transpose() * local;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigen(covariance);
        normals.row(i) = eigen.eigenvectors().col(0).transpose();
    }

    // Sign consistency along a spanning tree (BFS over the neighbour graph).
    std::vector<char> visited(n, 0);
    for (int seed = 0; seed < n; ++seed) {
        if (visited[seed])
            continue;
        visited[seed] = 1;
        std::queue<int> queue;
        queue.push(seed);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (const auto &[w, d] : cloud.neighbours[v]) {
                if (visited[w])
                    continue;
                visited[w] = 1;
                if (normals.row(v).dot(normals.row(w)) < 0.0)
                    normals.row(w) = -normals.row(w);
                queue.push(w);
            }
        }
    }
    return normals;
}

Eigen::MatrixX3d vertex_normals(const Shape &shape)
{
    if (std::holds_alternative<TriMesh>(shape))
        return vertex_normals(std::get<TriMesh>(shape));
    return vertex_normals(std::get<PointCloud>(shape));
}

} // namespace polymatch
