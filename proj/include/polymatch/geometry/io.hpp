#pragma once

#include "polymatch/geometry/shape.hpp"

#include <filesystem>

namespace polymatch {

enum class ShapeKind { Mesh, Cloud };

/// Reads an ASCII OFF or ASCII PLY file (format chosen by extension or
/// content). kind = Mesh requires faces; kind = Cloud drops faces and
/// builds the k-nearest-neighbour graph. Parse failures, out-of-range
/// indices and empty geometry are reported with line context.
Shape load_shape(const std::filesystem::path &path, ShapeKind kind,
                 int cloud_neighbours = 3);

TriMesh load_mesh(const std::filesystem::path &path);
PointCloud load_cloud(const std::filesystem::path &path,
                      int cloud_neighbours = 3);

/// Writes v/f records only.
void write_obj(const std::filesystem::path &path, const TriMesh &mesh);

} // namespace polymatch
