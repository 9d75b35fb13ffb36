#pragma once

#include "polymatch/geometry/shape.hpp"
#include "polymatch/model/config.hpp"
#include "polymatch/model/conic_model.hpp"
#include "polymatch/polyhedra/polyhedra.hpp"

namespace polymatch {

struct AssembleInputs {
    TriMesh source;                          // X, deformed towards the target
    std::vector<int> control_points;         // I, vertex ids into X
    std::vector<ConvexPolyhedron> polyhedra; // Z_j on the target
    MatchConfig config;
    // Geodesic distances between control points, required only when
    // config.distortion_bound is set: source u x u, target v x v.
    Eigen::MatrixXd source_geodesics;
    Eigen::MatrixXd target_geodesics;
};

/// Assembles the full convex mixed-integer SOCP: correspondence cone with
/// the matching and convex-combination constraints, the piecewise-linear
/// rotation block, both regulariser cones, mesh-consistency equalities and
/// the optional outlier / injectivity / distortion rows. Mask-forbidden
/// matchings are never declared; mask rows with a single allowed column fix
/// that entry outright.
ConicModel assemble(const AssembleInputs &inputs);

/// Standalone rotation block (for inspection and tests): the six
/// interpolated entries of the first two rows, their Gray-coded cell
/// binaries, the bilinear product auxiliaries with their in-cell envelopes,
/// and the six linearised quadratic equalities.
ConicModel build_rotation_model(int bins);

} // namespace polymatch
