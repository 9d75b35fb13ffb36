#pragma once

#include "polymatch/deformation/constraints.hpp"

#include <limits>
#include <string>
#include <vector>

namespace polymatch {

enum class VarKind { Continuous, Binary };

struct VarGroup {
    std::string name;
    std::vector<int> shape;
    int start = 0;
    int count = 0;
    VarKind kind = VarKind::Continuous;
    double lb = -std::numeric_limits<double>::infinity();
    double ub = std::numeric_limits<double>::infinity();
};

/// Second-order cone: epigraph >= || affine rows ||.
struct Cone {
    std::string name;
    int epigraph = -1;
    std::vector<AffineExpr> rows;
};

/// One piecewise-linear interpolation group: lambda weights over `grid`,
/// linked to the interpolated entry variable and its Gray-coded cell
/// binaries.
struct Sos2Group {
    int entry_var = -1;
    std::vector<int> lambdas;
    std::vector<int> binaries;
    std::vector<double> grid;
};

/// Index map into the flat variable space. Ranges are disjoint and cover
/// the whole model; -1 marks absent sections.
struct VariableLayout {
    // Mask-allowed P entries (row-major over (i, j)); alpha blocks follow
    // the same order, each of size d_j.
    std::vector<std::pair<int, int>> p_pairs;
    std::vector<int> p_vars;
    std::vector<int> alpha_starts;
    std::vector<int> alpha_sizes;

    int rotation_start = -1; // 9 entries, row-major
    int lambda_start = -1;   // 6 groups of (bins + 1)
    int rot_binary_start = -1;
    int product_start = -1; // 9 bilinear auxiliaries w_ij = R1_i * R2_j
    int linear_start = -1;  // 9 per face
    int translation_start = -1; // 3 per face
    int epsilon_start = -1; // 3 per control point (outliers only)
    int delta_start = -1;   // 1 per control point (outliers only)
    int s_corr = -1;
    int s_rigid = -1;
    int s_smooth = -1;

    int u = 0;
    int v = 0;
    int faces = 0;
    int bins = 0;
    std::vector<int> polyhedron_sizes; // d_j per polyhedron

    int rotation(int r, int c) const { return rotation_start + 3 * r + c; }
    int lambda(int group, int m) const
    {
        return lambda_start + group * (bins + 1) + m;
    }
    int product(int i, int j) const { return product_start + 3 * i + j; }
    int linear(int face, int r, int c) const
    {
        return linear_start + 9 * face + 3 * r + c;
    }
    int translation(int face, int c) const
    {
        return translation_start + 3 * face + c;
    }
    int epsilon(int i, int c) const { return epsilon_start + 3 * i + c; }
    int delta(int i) const { return delta_start + i; }
    /// Index into p_pairs/p_vars/alpha_starts of the allowed pair (i, j),
    /// or -1 when forbidden.
    int pair_index(int i, int j) const;
};

struct ModelCensus {
    int variables = 0;
    int binaries_total = 0;
    int binaries_p = 0;
    int binaries_rotation = 0;
    int binaries_outlier = 0;
    int fixed_p = 0;
    int equality_rows = 0;
    int inequality_rows = 0;
    int cones = 0;
    int sos2_groups = 0;
};

/// The assembled mixed-integer second-order-cone program.
struct ConicModel {
    std::vector<VarGroup> groups;
    std::vector<double> lb, ub;
    std::vector<VarKind> kinds;
    std::vector<LinearConstraintBlock> blocks;
    std::vector<Cone> cones;
    std::vector<Sos2Group> sos2_groups;
    std::vector<LinearTerm> objective;
    VariableLayout layout;
    std::vector<std::string> warnings;

    int var_count() const { return static_cast<int>(lb.size()); }

    int add_group(const std::string &name, std::vector<int> shape,
                  VarKind kind, double lower, double upper);
    void fix_var(int var, double value);
    LinearConstraintBlock &block(ConstraintOrigin origin);

    /// All binary variable indices in canonical order (sos2 group binaries
    /// first, then the remaining groups in registration order).
    std::vector<int> binary_order() const;

    ModelCensus census() const;

    /// Structural convexity check: every referenced variable is declared,
    /// binaries have {0,1} bounds, each sos2 group of size b+1 links
    /// exactly ceil(log2 b) binaries, rows and cones are finite-valued.
    void check_structure() const;

    /// Self-describing JSON text format (variables, linear rows as sparse
    /// triplets, cones as affine maps, sos2 groups, objective).
    std::string to_json() const;
};

} // namespace polymatch
