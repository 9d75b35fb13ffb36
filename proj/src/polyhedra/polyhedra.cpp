#include "polymatch/polyhedra/polyhedra.hpp"

#include "polymatch/geometry/geodesics.hpp"
#include "polymatch/geometry/normals.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>
#include <queue>
#include <set>

namespace polymatch {

Eigen::RowVector3d mad(const Eigen::MatrixX3d &normals)
{
    if (normals.rows() < 1)
        throw Error("mad: need at least one row");
    const Eigen::RowVector3d mean = normals.colwise().mean();
    return (normals.rowwise() - mean).cwiseAbs().colwise().mean();
}

namespace {

// Vertices within `t` graph hops, ordered by (hop level, index) with the
// centre first.
std::vector<int> ring_neighbourhood(const VertexGraph &graph, int centre,
                                    int t)
{
    std::vector<int> level(graph.vertex_count(), -1);
    std::vector<int> ring{centre};
    level[centre] = 0;
    size_t head = 0;
    while (head < ring.size()) {
        const int v = ring[head++];
        if (level[v] == t)
            continue;
        for (const auto &[w, len] : graph.adjacency[v])
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                ring.push_back(w);
            }
    }
    return ring;
}

Eigen::MatrixX3d gather_rows(const Eigen::MatrixX3d &matrix,
                             const std::vector<int> &rows)
{
    Eigen::MatrixX3d out(rows.size(), 3);
    for (size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<int>(i)) = matrix.row(rows[i]);
    return out;
}

// Monotone chain hull over 2D points; returns indices of hull corners.
std::vector<int> convex_hull_2d(const std::vector<Eigen::Vector2d> &points)
{
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (points[a].x() != points[b].x())
            return points[a].x() < points[b].x();
        return points[a].y() < points[b].y();
    });

    auto cross = [&](int o, int a, int b) {
        const Eigen::Vector2d oa = points[a] - points[o];
        const Eigen::Vector2d ob = points[b] - points[o];
        return oa.x() * ob.y() - oa.y() * ob.x();
    };

    std::vector<int> hull;
    for (int idx : order) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], hull.back(), idx) <= 0)
            hull.pop_back();
        hull.push_back(idx);
    }
    const size_t lower = hull.size() + 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        while (hull.size() >= lower &&
               cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

bool strictly_inside(const std::vector<Eigen::Vector2d> &points,
                     const std::vector<int> &hull, int query, double eps)
{
    if (hull.size() < 3)
        return false;
    for (size_t k = 0; k < hull.size(); ++k) {
        const Eigen::Vector2d &a = points[hull[k]];
        const Eigen::Vector2d &b = points[hull[(k + 1) % hull.size()]];
        const Eigen::Vector2d ab = b - a;
        const Eigen::Vector2d aq = points[query] - a;
        if (ab.x() * aq.y() - ab.y() * aq.x() <= eps)
            return false;
    }
    return true;
}

} // namespace

ConvexPolyhedron grow_polyhedron(const VertexGraph &graph,
                                 const Eigen::MatrixX3d &positions,
                                 const Eigen::MatrixX3d &normals,
                                 int control_vertex, int anchor_in_J,
                                 double eta)
{
    if (control_vertex < 0 || control_vertex >= graph.vertex_count())
        throw Error("grow_polyhedron: control point index out of range");
    if (!(eta > 0.0))
        throw Error("grow_polyhedron: eta must be positive");

    std::vector<int> accepted{control_vertex};
    int accepted_level = 0;
    for (int t = 1;; ++t) {
        std::vector<int> ring = ring_neighbourhood(graph, control_vertex, t);
        if (ring.size() == accepted.size())
            break; // no growth; the whole component is in
        const Eigen::RowVector3d deviation = mad(gather_rows(normals, ring));
        if (deviation.maxCoeff() > eta)
            break;
        accepted = std::move(ring);
        accepted_level = t;
    }

    ConvexPolyhedron poly;
    poly.vertex_indices = std::move(accepted);
    poly.vertices = gather_rows(positions, poly.vertex_indices);
    poly.anchor = anchor_in_J;
    poly.ring_level = accepted_level;
    return poly;
}

ConvexPolyhedron prune_polyhedron(const ConvexPolyhedron &poly,
                                  const VertexGraph &graph)
{
    if (poly.size() <= 1)
        return poly;

    // Stage 1: principal-plane projection and hull interior removal.
    std::vector<int> survivors;
    {
        const Eigen::RowVector3d mean = poly.vertices.colwise().mean();
        Eigen::MatrixX3d centred = poly.vertices.rowwise() - mean;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigen(
            centred.transpose() * centred);
        const double spread = eigen.eigenvalues()(2);
        const double second = eigen.eigenvalues()(1);
        if (second <= 1e-12 * std::max(spread, 1e-300)) {
            // Collinear set; the hull stage does not apply.
            survivors.resize(poly.size());
            std::iota(survivors.begin(), survivors.end(), 0);
        } else {
            const Eigen::Vector3d axis_u = eigen.eigenvectors().col(2);
            const Eigen::Vector3d axis_v = eigen.eigenvectors().col(1);
            std::vector<Eigen::Vector2d> plane(poly.size());
            for (int i = 0; i < poly.size(); ++i)
                plane[i] = {centred.row(i) * axis_u, centred.row(i) * axis_v};
            const std::vector<int> hull = convex_hull_2d(plane);
            const double scale = std::sqrt(spread / poly.size());
            for (int i = 0; i < poly.size(); ++i)
                if (i == 0 || !strictly_inside(plane, hull, i, 1e-9 * scale))
                    survivors.push_back(i); // row 0 (anchor) always kept
        }
    }

    // Stage 2: anchor + up to 4 more by geodesic farthest point sampling.
    const int anchor_vertex = poly.vertex_indices[0];
    std::set<int> candidate_set;
    for (int i : survivors)
        candidate_set.insert(poly.vertex_indices[i]);
    candidate_set.erase(anchor_vertex);

    std::vector<int> chosen{anchor_vertex};
    std::vector<double> min_dist = geodesic_distances(graph, anchor_vertex);
    while (chosen.size() < 5 && !candidate_set.empty()) {
        int best = -1;
        double best_dist = -1.0;
        for (int v : candidate_set)
            if (min_dist[v] > best_dist) {
                best = v;
                best_dist = min_dist[v];
            }
        chosen.push_back(best);
        candidate_set.erase(best);
        const auto dist = geodesic_distances(graph, best);
        for (size_t v = 0; v < min_dist.size(); ++v)
            min_dist[v] = std::min(min_dist[v], dist[v]);
    }

    ConvexPolyhedron pruned;
    pruned.vertex_indices = std::move(chosen);
    pruned.anchor = poly.anchor;
    pruned.ring_level = poly.ring_level;
    pruned.vertices.resize(pruned.vertex_indices.size(), 3);
    for (size_t i = 0; i < pruned.vertex_indices.size(); ++i) {
        const auto row =
            std::find(poly.vertex_indices.begin(), poly.vertex_indices.end(),
                      pruned.vertex_indices[i]) -
            poly.vertex_indices.begin();
        pruned.vertices.row(static_cast<int>(i)) = poly.vertices.row(row);
    }
    return pruned;
}

std::vector<ConvexPolyhedron>
build_polyhedra(const Shape &shape, const std::vector<int> &control_points,
                double eta)
{
    const VertexGraph graph = vertex_graph(shape);
    const Eigen::MatrixX3d normals = vertex_normals(shape);
    const Eigen::MatrixX3d &positions = shape_points(shape);

    std::vector<ConvexPolyhedron> polyhedra;
    polyhedra.reserve(control_points.size());
    for (size_t j = 0; j < control_points.size(); ++j) {
        ConvexPolyhedron grown =
            grow_polyhedron(graph, positions, normals, control_points[j],
                            static_cast<int>(j), eta);
        polyhedra.push_back(prune_polyhedron(grown, graph));
    }
    return polyhedra;
}

std::vector<ConvexPolyhedron>
point_polyhedra(const Shape &shape, const std::vector<int> &control_points)
{
    const Eigen::MatrixX3d &positions = shape_points(shape);
    std::vector<ConvexPolyhedron> polyhedra;
    polyhedra.reserve(control_points.size());
    for (size_t j = 0; j < control_points.size(); ++j) {
        ConvexPolyhedron poly;
        poly.vertices = positions.row(control_points[j]);
        poly.vertex_indices = {control_points[j]};
        poly.anchor = static_cast<int>(j);
        poly.ring_level = 0;
        polyhedra.push_back(std::move(poly));
    }
    return polyhedra;
}

std::string polyhedra_to_json(const std::vector<ConvexPolyhedron> &polyhedra)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &poly : polyhedra) {
        nlohmann::json entry;
        entry["anchor"] = poly.anchor;
        entry["ring_level"] = poly.ring_level;
        entry["vertex_indices"] = poly.vertex_indices;
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < poly.size(); ++i)
            rows.push_back({poly.vertices(i, 0), poly.vertices(i, 1),
                            poly.vertices(i, 2)});
        entry["vertices"] = rows;
        out.push_back(std::move(entry));
    }
    return out.dump(2);
}

} // namespace polymatch
