#pragma once

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

struct DecimateResult {
    TriMesh mesh;
    // False when no grid resolution reached the target within a factor of 2;
    // the mesh is then the best effort found.
    bool reached_target = true;
};

/// Crude vertex-clustering decimation on a uniform grid. The grid
/// resolution is searched (bounded) so the face count approaches
/// `target_faces` within a factor of 2. Degenerate and duplicate faces are
/// dropped, as are faces that would make an edge non-manifold, so the
/// output always satisfies the TriMesh invariants.
DecimateResult decimate(const TriMesh &mesh, int target_faces);

} // namespace polymatch
