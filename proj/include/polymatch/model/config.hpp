#pragma once

#include "polymatch/reduction/reduction.hpp"

#include <optional>

namespace polymatch {

/// Weights and switches of the matching model. Defaults follow the
/// reference parameter set the formulation was tuned with.
struct MatchConfig {
    double lambda_corr = 4.0;
    double lambda_rigid = 1.0;
    double lambda_smooth = 0.5;

    int bins = 4;          // rotation discretisation bins (power of two)
    double big_m = 0.2;    // outlier error box half-width
    int n_out = 0;         // max control points allowed to opt out
    bool injective = false;
    std::optional<double> distortion_bound;
    std::optional<MatchMask> mask;

    // Conservative box bounds on the per-face linear parts and
    // translations, in normalised units.
    double transform_box = 10.0;
    // Emit each smoothness residual for both orientations of an adjacency.
    bool smooth_both_orientations = true;

    void validate() const;
};

} // namespace polymatch
