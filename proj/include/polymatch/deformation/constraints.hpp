#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace polymatch {

enum class ConstraintOrigin {
    Consistency,
    Gamma,
    Outlier,
    Injectivity,
    Distortion,
    Sos2,
    Matching,
    Rotation,
    McCormick,
    Bounds,
};

std::string to_string(ConstraintOrigin origin);

struct LinearTerm {
    int var = -1;
    double coeff = 0.0;
};

/// One sparse row: sum(terms) (= or <=) rhs.
struct LinearRow {
    std::vector<LinearTerm> terms;
    double rhs = 0.0;
};

/// Affine expression sum(terms) + constant, used inside cone norms.
struct AffineExpr {
    std::vector<LinearTerm> terms;
    double constant = 0.0;
};

/// Rows over a shared variable index space, tagged by where they came from.
struct LinearConstraintBlock {
    ConstraintOrigin origin = ConstraintOrigin::Consistency;
    std::vector<LinearRow> equalities;   // row = rhs
    std::vector<LinearRow> inequalities; // row <= rhs
};

/// Maps the symbolic per-triangle transform slots (shared rotation R,
/// per-face linear parts T_p, translations t_p) to columns of whatever
/// variable space the caller assembles. Matrix entries are addressed
/// (row, col) in the row-vector convention x' = x * M.
struct TransformVarMap {
    std::function<int(int r, int c)> rotation;
    std::function<int(int face, int r, int c)> linear;
    std::function<int(int face, int c)> translation;
};

} // namespace polymatch
