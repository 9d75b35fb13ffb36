#pragma once

#include "polymatch/model/conic_model.hpp"

#include <Eigen/Sparse>
#include <map>

namespace polymatch {

/// Standard conic form:
///   minimise    c' x + objective_offset
///   subject to  A x = b
///               G x + s = h,  s in (nonneg orthant of dim lp_dim) x
///                             (second-order cones of dims soc_dims)
struct SocpProblem {
    Eigen::SparseMatrix<double> A, G;
    Eigen::VectorXd b, h, c;
    int lp_dim = 0;
    std::vector<int> soc_dims;
    double objective_offset = 0.0;

    int var_count() const { return static_cast<int>(c.size()); }
    int cone_dim() const { return static_cast<int>(h.size()); }
};

struct Canonical {
    bool feasible = true;        // false: fixings already contradict a row
    std::string infeasibility;   // what failed when !feasible
    SocpProblem problem;
    std::vector<int> free_vars;          // reduced index -> model index
    std::vector<double> model_values;    // fixed entries pre-filled
    std::vector<bool> is_fixed;

    /// Scatter a reduced solution into the full model variable space.
    std::vector<double> scatter(const Eigen::VectorXd &x) const;
};

/// Eliminates fixed variables (explicit fixings plus lb == ub declarations),
/// turns bounds and inequality rows into orthant rows and cones into
/// second-order cone blocks. Binaries without a fixing relax to their
/// [0, 1] box.
Canonical canonicalize(const ConicModel &model,
                       const std::map<int, double> &fixings = {});

} // namespace polymatch
