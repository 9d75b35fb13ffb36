#include "polymatch/deformation/deformation.hpp"

#include <nlohmann/json.hpp>

namespace polymatch {

std::string to_string(ConstraintOrigin origin)
{
    switch (origin) {
    case ConstraintOrigin::Consistency: return "consistency";
    case ConstraintOrigin::Gamma: return "gamma";
    case ConstraintOrigin::Outlier: return "outlier";
    case ConstraintOrigin::Injectivity: return "injectivity";
    case ConstraintOrigin::Distortion: return "distortion";
    case ConstraintOrigin::Sos2: return "sos2";
    case ConstraintOrigin::Matching: return "matching";
    case ConstraintOrigin::Rotation: return "rotation";
    case ConstraintOrigin::McCormick: return "mccormick";
    case ConstraintOrigin::Bounds: return "bounds";
    }
    return "unknown";
}

DeformationField DeformationField::identity(const TriMesh &mesh)
{
    DeformationField field;
    field.rotation = Eigen::Matrix3d::Identity();
    field.linear.assign(mesh.face_count(), Eigen::Matrix3d::Zero());
    field.translation.assign(mesh.face_count(), Eigen::RowVector3d::Zero());
    field.centroids = triangle_centroids(mesh);
    return field;
}

Eigen::RowVector3d apply_triangle_transform(const DeformationField &field,
                                            int face,
                                            const Eigen::RowVector3d &point)
{
    if (face < 0 || face >= field.face_count())
        throw Error("apply_triangle_transform: face index out of range");
    const Eigen::RowVector3d centred = point - field.centroids.row(face);
    return centred * (field.rotation + field.linear[face]) +
           field.centroids.row(face) + field.translation[face];
}

LinearConstraintBlock consistency_constraints(const TriMesh &mesh,
                                              const TransformVarMap &vars)
{
    const Eigen::MatrixX3d centroids = triangle_centroids(mesh);
    const auto incidence = vertex_face_incidence(mesh);

    LinearConstraintBlock block;
    block.origin = ConstraintOrigin::Consistency;
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        const auto &faces = incidence[i];
        const Eigen::RowVector3d x = mesh.vertices.row(i);
        for (size_t n = 0; n + 1 < faces.size(); ++n) {
            const int p = faces[n];
            const int q = faces[n + 1];
            const Eigen::RowVector3d xp = x - centroids.row(p);
            const Eigen::RowVector3d xq = x - centroids.row(q);
            // tau_p(x) - tau_q(x) = 0, componentwise. R picks up the
            // centroid difference, T_p / T_q keep the centred coordinates.
            for (int k = 0; k < 3; ++k) {
                LinearRow row;
                for (int m = 0; m < 3; ++m) {
                    const double r_coeff = xp(m) - xq(m);
                    if (r_coeff != 0.0)
                        row.terms.push_back({vars.rotation(m, k), r_coeff});
                    if (xp(m) != 0.0)
                        row.terms.push_back({vars.linear(p, m, k), xp(m)});
                    if (xq(m) != 0.0)
                        row.terms.push_back({vars.linear(q, m, k), -xq(m)});
                }
                row.terms.push_back({vars.translation(p, k), 1.0});
                row.terms.push_back({vars.translation(q, k), -1.0});
                row.rhs = centroids(q, k) - centroids(p, k);
                block.equalities.push_back(std::move(row));
            }
        }
    }
    return block;
}

std::vector<SmoothnessTerm> smoothness_terms(const TriMesh &mesh,
                                             const TransformVarMap &vars,
                                             bool both_orientations)
{
    const Eigen::MatrixX3d centroids = triangle_centroids(mesh);
    const FaceAdjacency adjacency = face_adjacency(mesh);

    double edge_total = 0.0;
    for (const auto &pair : adjacency.pairs)
        edge_total += pair.shared_edge_length;

    std::vector<SmoothnessTerm> terms;
    auto emit = [&](int p, int q, double weight) {
        // Delta = (c_q - c_p)(R + T_p) + c_p + t_p - c_q - t_q
        const Eigen::RowVector3d d = centroids.row(q) - centroids.row(p);
        SmoothnessTerm term;
        term.p = p;
        term.q = q;
        term.weight = weight;
        for (int k = 0; k < 3; ++k) {
            AffineExpr expr;
            for (int m = 0; m < 3; ++m) {
                if (d(m) != 0.0) {
                    expr.terms.push_back({vars.rotation(m, k), d(m)});
                    expr.terms.push_back({vars.linear(p, m, k), d(m)});
                }
            }
            expr.terms.push_back({vars.translation(p, k), 1.0});
            expr.terms.push_back({vars.translation(q, k), -1.0});
            expr.constant = centroids(p, k) - centroids(q, k);
            term.delta[k] = std::move(expr);
        }
        terms.push_back(std::move(term));
    };

    for (const auto &pair : adjacency.pairs) {
        const double weight = pair.shared_edge_length / edge_total;
        emit(pair.p, pair.q, weight);
        if (both_orientations)
            emit(pair.q, pair.p, weight);
    }
    return terms;
}

DeformedMesh deform_mesh(const TriMesh &mesh, const DeformationField &field)
{
    if (field.face_count() != mesh.face_count())
        throw Error("deform_mesh: field was built for a different mesh");
    const auto incidence = vertex_face_incidence(mesh);

    DeformedMesh out;
    out.mesh = mesh;
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        if (incidence[i].empty())
            continue;
        const Eigen::RowVector3d x = mesh.vertices.row(i);
        const Eigen::RowVector3d image =
            apply_triangle_transform(field, incidence[i][0], x);
        out.mesh.vertices.row(i) = image;
        for (size_t n = 1; n < incidence[i].size(); ++n) {
            const Eigen::RowVector3d other =
                apply_triangle_transform(field, incidence[i][n], x);
            out.max_inconsistency =
                std::max(out.max_inconsistency, (other - image).norm());
        }
    }
    return out;
}

double rigidity_value(const DeformationField &field)
{
    double sum = 0.0;
    for (const auto &T : field.linear)
        sum += T.squaredNorm();
    return std::sqrt(sum);
}

std::string field_to_json(const DeformationField &field)
{
    nlohmann::json out;
    out["rotation"] = {
        {field.rotation(0, 0), field.rotation(0, 1), field.rotation(0, 2)},
        {field.rotation(1, 0), field.rotation(1, 1), field.rotation(1, 2)},
        {field.rotation(2, 0), field.rotation(2, 1), field.rotation(2, 2)}};
    nlohmann::json linear = nlohmann::json::array();
    nlohmann::json translation = nlohmann::json::array();
    for (int p = 0; p < field.face_count(); ++p) {
        const auto &T = field.linear[p];
        linear.push_back({{T(0, 0), T(0, 1), T(0, 2)},
                          {T(1, 0), T(1, 1), T(1, 2)},
                          {T(2, 0), T(2, 1), T(2, 2)}});
        const auto &t = field.translation[p];
        translation.push_back({t(0), t(1), t(2)});
    }
    out["linear"] = std::move(linear);
    out["translation"] = std::move(translation);
    return out.dump(2);
}

} // namespace polymatch
