#include "polymatch/model/config.hpp"

#include "polymatch/geometry/shape.hpp"

namespace polymatch {

void MatchConfig::validate() const
{
    if (lambda_corr < 0.0 || lambda_rigid < 0.0 || lambda_smooth < 0.0)
        throw Error("config: weights must be non-negative");
    if (bins < 2 || (bins & (bins - 1)) != 0)
        throw Error("config: bins must be a power of two >= 2");
    if (n_out < 0)
        throw Error("config: n_out must be >= 0");
    if (n_out > 0 && !(big_m > 0.0))
        throw Error("config: big_m must be positive when n_out > 0");
    if (distortion_bound && !(*distortion_bound >= 0.0))
        throw Error("config: distortion_bound must be non-negative");
    if (!(transform_box > 0.0))
        throw Error("config: transform_box must be positive");
}

} // namespace polymatch
