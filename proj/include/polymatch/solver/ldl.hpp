#pragma once

#include <Eigen/Sparse>
#include <vector>

namespace polymatch {

/// Sparse LDL' factorisation for the quasi-definite KKT systems of the
/// interior point solver: AMD fill-reducing ordering, up-looking numeric
/// factorisation along the elimination tree, and signed dynamic
/// regularisation of pivots that lose their expected sign.
class LdlSolver {
  public:
    /// Symbolic analysis. `upper` must hold the upper triangular part
    /// (including the full diagonal) of the symmetric matrix.
    void analyze(const Eigen::SparseMatrix<double> &upper);

    /// Numeric factorisation of a matrix with the analysed pattern.
    /// `pivot_signs[k]` = +1 or -1, the expected inertia of row k in the
    /// original ordering; pivots of the wrong sign or below `dyn_eps` are
    /// replaced by sign * dyn_reg.
    /// Returns the number of regularised pivots.
    int factorize(const Eigen::SparseMatrix<double> &upper,
                  const std::vector<int> &pivot_signs, double dyn_eps = 1e-14,
                  double dyn_reg = 1e-8);

    Eigen::VectorXd solve(const Eigen::VectorXd &rhs) const;

    int size() const { return n_; }

  private:
    int n_ = 0;
    // Permuted pattern (upper triangular CSC) kept from analyze().
    std::vector<int> perm_, perm_inv_;
    std::vector<int> up_ptr_, up_ind_;
    std::vector<double> up_val_;
    std::vector<int> parent_, l_col_ptr_;
    // Numeric factors.
    std::vector<int> l_ptr_, l_ind_;
    std::vector<double> l_val_, d_;
};

} // namespace polymatch
