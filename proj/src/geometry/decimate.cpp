#include "polymatch/geometry/decimate.hpp"

#include <array>
#include <map>
#include <set>

namespace polymatch {

namespace {

TriMesh cluster_on_grid(const TriMesh &mesh, int resolution)
{
    const Eigen::RowVector3d lo = mesh.vertices.colwise().minCoeff();
    const Eigen::RowVector3d hi = mesh.vertices.colwise().maxCoeff();
    const Eigen::RowVector3d extent =
        (hi - lo).cwiseMax(Eigen::RowVector3d::Constant(1e-12));

    // Assign each vertex to a grid cell, each cell becomes one vertex at the
    // mean of its members.
    std::map<std::array<int, 3>, int> cell_to_cluster;
    std::vector<int> vertex_cluster(mesh.vertex_count());
    std::vector<Eigen::RowVector3d> sums;
    std::vector<int> counts;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        std::array<int, 3> cell;
        for (int k = 0; k < 3; ++k) {
            const double t = (mesh.vertices(v, k) - lo(k)) / extent(k);
            cell[k] = std::min(resolution - 1,
                               static_cast<int>(t * resolution));
        }
        auto [it, inserted] =
            cell_to_cluster.try_emplace(cell, static_cast<int>(sums.size()));
        if (inserted) {
            sums.emplace_back(Eigen::RowVector3d::Zero());
            counts.push_back(0);
        }
        vertex_cluster[v] = it->second;
        sums[it->second] += mesh.vertices.row(v);
        counts[it->second] += 1;
    }

    Eigen::MatrixX3d vertices(sums.size(), 3);
    for (size_t c = 0; c < sums.size(); ++c)
        vertices.row(static_cast<int>(c)) = sums[c] / counts[c];

    std::set<std::array<int, 3>> seen_faces;
    std::map<std::pair<int, int>, int> edge_use;
    std::vector<std::array<int, 3>> faces;
    for (int f = 0; f < mesh.face_count(); ++f) {
        std::array<int, 3> face{vertex_cluster[mesh.faces(f, 0)],
                                vertex_cluster[mesh.faces(f, 1)],
                                vertex_cluster[mesh.faces(f, 2)]};
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            continue; // collapsed
        std::array<int, 3> key = face;
        std::sort(key.begin(), key.end());
        if (!seen_faces.insert(key).second)
            continue; // duplicate
        bool manifold = true;
        for (int k = 0; k < 3; ++k) {
            auto edge = std::minmax(face[k], face[(k + 1) % 3]);
            if (edge_use[edge] >= 2) {
                manifold = false;
                break;
            }
        }
        if (!manifold)
            continue;
        for (int k = 0; k < 3; ++k)
            edge_use[std::minmax(face[k], face[(k + 1) % 3])] += 1;
        faces.push_back(face);
    }

    Eigen::MatrixX3i face_matrix(faces.size(), 3);
    for (size_t f = 0; f < faces.size(); ++f)
        for (int k = 0; k < 3; ++k)
            face_matrix(static_cast<int>(f), k) = faces[f][k];

    return TriMesh{std::move(vertices), std::move(face_matrix)};
}

} // namespace

DecimateResult decimate(const TriMesh &mesh, int target_faces)
{
    if (target_faces < 4)
        throw Error("decimate: target_faces must be >= 4");
    if (mesh.face_count() <= target_faces)
        return {mesh, true};

    constexpr int max_resolution = 96;
    TriMesh best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int resolution = 2; resolution <= max_resolution; ++resolution) {
        TriMesh candidate = cluster_on_grid(mesh, resolution);
        const int f = candidate.face_count();
        if (f < 1)
            continue;
        const double score = std::abs(
            std::log(static_cast<double>(f) / target_faces));
        if (score < best_score) {
            best_score = score;
            best = std::move(candidate);
        }
        if (f >= 2 * target_faces)
            break; // finer grids only overshoot further
    }

    if (best.face_count() == 0)
        return {mesh, false};
    validate_mesh(best, "decimate");
    const int f = best.face_count();
    const bool reached =
        f >= (target_faces + 1) / 2 && f <= 2 * target_faces;
    return {std::move(best), reached};
}

} // namespace polymatch
