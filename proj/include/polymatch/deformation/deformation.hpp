#pragma once

#include "polymatch/deformation/constraints.hpp"
#include "polymatch/geometry/shape.hpp"

namespace polymatch {

/// Per-triangle affine deformation: a shared rotation R plus per-face
/// linear parts T_p and translations t_p, applied about the undeformed
/// face centroids c_p.
struct DeformationField {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    std::vector<Eigen::Matrix3d> linear;          // T_p, one per face
    std::vector<Eigen::RowVector3d> translation;  // t_p, one per face
    Eigen::MatrixX3d centroids;                   // c_p, f x 3

    int face_count() const { return static_cast<int>(linear.size()); }
    static DeformationField identity(const TriMesh &mesh);
};

/// (x - c_p)(R + T_p) + c_p + t_p
Eigen::RowVector3d apply_triangle_transform(const DeformationField &field,
                                            int face,
                                            const Eigen::RowVector3d &point);

/// Equalities forcing adjacent triangles to map shared vertices to the
/// same place. Per vertex a spanning chain over consecutive faces of N_i
/// is emitted (pairwise equality follows by transitivity), 3 scalar rows
/// per consecutive pair.
LinearConstraintBlock consistency_constraints(const TriMesh &mesh,
                                              const TransformVarMap &vars);

/// One smoothness residual Delta_e = tau_p(c_q) - (c_q + t_q) per ordered
/// neighbour pair, with shared-edge-length weights normalised to sum to 1
/// over the unordered pair set.
struct SmoothnessTerm {
    int p = 0;
    int q = 0;
    double weight = 0.0;
    std::array<AffineExpr, 3> delta; // residual components
};

std::vector<SmoothnessTerm> smoothness_terms(const TriMesh &mesh,
                                             const TransformVarMap &vars,
                                             bool both_orientations = true);

struct DeformedMesh {
    TriMesh mesh;
    // Largest distance between images of a vertex under different adjacent
    // faces; 0 for fields satisfying the consistency constraints exactly.
    double max_inconsistency = 0.0;
};

/// Maps every vertex by the transform of its lowest-index adjacent face
/// (vertices without any face are left in place).
DeformedMesh deform_mesh(const TriMesh &mesh, const DeformationField &field);

/// Frobenius norm of the stacked linear parts [T_1, ..., T_f]; zero exactly
/// for locally rigid fields.
double rigidity_value(const DeformationField &field);

/// JSON export (R, per-face T and t).
std::string field_to_json(const DeformationField &field);

} // namespace polymatch
