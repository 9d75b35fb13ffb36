#pragma once

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

/// Transform applied by normalisation: p' = (p - offset) * scale.
/// Invert with p = p' / scale + offset.
struct NormalizeTransform {
    double scale = 1.0;
    Eigen::RowVector3d offset = Eigen::RowVector3d::Zero();

    Eigen::MatrixX3d apply(const Eigen::MatrixX3d &points) const
    {
        return (points.rowwise() - offset) * scale;
    }
    Eigen::MatrixX3d invert(const Eigen::MatrixX3d &points) const
    {
        return (points / scale).rowwise() + offset;
    }
};

/// Centres the shape at its vertex centroid and scales it so the
/// axis-aligned bounding-box diagonal is 1. Throws on degenerate shapes
/// (zero diagonal).
NormalizeTransform normalize(Shape &shape);

/// Normalises a source/target pair with a single scale factor derived from
/// the target's bounding-box diagonal, each shape centred at its own
/// centroid. Keeping one factor for both preserves their relative size and
/// makes the fixed big-M outlier bound meaningful.
std::pair<NormalizeTransform, NormalizeTransform>
normalize_pair(Shape &source, Shape &target);

} // namespace polymatch
