#include "polymatch/geometry/normalize.hpp"

namespace polymatch {

namespace {

double bbox_diagonal(const Eigen::MatrixX3d &points)
{
    const Eigen::RowVector3d lo = points.colwise().minCoeff();
    const Eigen::RowVector3d hi = points.colwise().maxCoeff();
    return (hi - lo).norm();
}

} // namespace

NormalizeTransform normalize(Shape &shape)
{
    Eigen::MatrixX3d &points = shape_points(shape);
    if (points.rows() == 0)
        throw Error("normalize: empty shape");
    const double diagonal = bbox_diagonal(points);
    if (!(diagonal > 0.0))
        throw Error("normalize: degenerate shape (zero bounding-box diagonal)");

    NormalizeTransform transform;
    transform.offset = points.colwise().mean();
    transform.scale = 1.0 / diagonal;
    points = transform.apply(points);
    return transform;
}

std::pair<NormalizeTransform, NormalizeTransform>
normalize_pair(Shape &source, Shape &target)
{
    Eigen::MatrixX3d &src = shape_points(source);
    Eigen::MatrixX3d &tgt = shape_points(target);
    if (src.rows() == 0 || tgt.rows() == 0)
        throw Error("normalize_pair: empty shape");
    const double diagonal = bbox_diagonal(tgt);
    if (!(diagonal > 0.0))
        throw Error("normalize_pair: degenerate target shape");

    NormalizeTransform for_source{1.0 / diagonal, src.colwise().mean()};
    NormalizeTransform for_target{1.0 / diagonal, tgt.colwise().mean()};
    src = for_source.apply(src);
    tgt = for_target.apply(tgt);
    return {for_source, for_target};
}

} // namespace polymatch
