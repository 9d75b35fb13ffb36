#pragma once

#include "polymatch/geometry/shape.hpp"

#include <optional>

namespace polymatch {

/// Per-control-point geodesic distance percentiles, columns ordered from
/// the 0% to the 100% level. Every row is non-decreasing left to right.
struct PercentileFeatures {
    Eigen::MatrixXd values; // u x n_prctile
};

/// Boolean matrix of allowed matchings (the nonzero pattern of the summed
/// assignment matrices).
struct MatchMask {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed;
    bool truncated = false; // an intermediate assignment ran infeasible

    int rows() const { return static_cast<int>(allowed.rows()); }
    int cols() const { return static_cast<int>(allowed.cols()); }
};

/// Samples each sorted distance row at n_prctile evenly spaced quantile
/// levels (0% to 100%, linear interpolation between order statistics).
/// Infinite distances (a disconnected control point) are an error naming
/// the control point.
PercentileFeatures percentile_features(const Eigen::MatrixXd &distance_rows,
                                       int n_prctile);

struct LapResult {
    bool feasible = false;
    std::vector<int> row_to_col; // size u; column for each row
    double cost = 0.0;
};

/// Minimum-cost injective assignment of all rows to distinct columns
/// (shortest augmenting path), u <= v. Forbidden entries are unassignable.
/// Ties break toward the lowest column index.
LapResult lap_solve(
    const Eigen::MatrixXd &cost,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> *forbidden =
        nullptr);

/// Runs n_lap sequential assignments over the pairwise feature distances
/// d_ij = ||gamma_x_i - gamma_y_j||, each forbidding all previously used
/// pairs; the union of the assignments is the mask. Requires u <= v; for
/// u > v the mask falls back to all-true. Also returns the successive
/// assignment costs (non-decreasing across rounds).
MatchMask build_mask(const PercentileFeatures &gamma_x,
                     const PercentileFeatures &gamma_y, int n_lap,
                     std::vector<double> *round_costs = nullptr);

/// Pairwise feature distance matrix d_ij.
Eigen::MatrixXd feature_distances(const PercentileFeatures &gamma_x,
                                  const PercentileFeatures &gamma_y);

/// CSV dumps for debugging (distances, then the 0/1 mask).
std::string distances_to_csv(const Eigen::MatrixXd &distances);
std::string mask_to_csv(const MatchMask &mask);

} // namespace polymatch
