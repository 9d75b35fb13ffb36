#include "polymatch/reduction/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace polymatch {

namespace {
constexpr double kForbidden = 1e30;
}

PercentileFeatures percentile_features(const Eigen::MatrixXd &distance_rows,
                                       int n_prctile)
{
    if (n_prctile < 2)
        throw Error("percentile_features: n_prctile must be >= 2");
    const int u = static_cast<int>(distance_rows.rows());
    const int m = static_cast<int>(distance_rows.cols());
    if (m < 1)
        throw Error("percentile_features: empty distance rows");

    PercentileFeatures features;
    features.values.resize(u, n_prctile);
    std::vector<double> sorted(m);
    for (int i = 0; i < u; ++i) {
        for (int j = 0; j < m; ++j) {
            sorted[j] = distance_rows(i, j);
            if (!std::isfinite(sorted[j]))
                throw Error("percentile_features: control point " +
                            std::to_string(i) +
                            " has non-finite geodesic distances "
                            "(disconnected shape?)");
        }
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k < n_prctile; ++k) {
            const double level =
                static_cast<double>(k) / (n_prctile - 1); // 0 .. 1
            const double position = level * (m - 1);
            const int lo = static_cast<int>(position);
            const int hi = std::min(lo + 1, m - 1);
            const double frac = position - lo;
            features.values(i, k) =
                sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
        }
    }
    return features;
}

LapResult lap_solve(
    const Eigen::MatrixXd &cost,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> *forbidden)
{
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    if (n > m)
        throw Error("lap_solve: requires rows <= columns");

    auto entry = [&](int i, int j) {
        if (forbidden && (*forbidden)(i, j))
            return kForbidden;
        return cost(i, j);
    };

    // Shortest augmenting path with potentials (1-indexed). Scanning
    // columns in ascending order breaks cost ties toward the lowest index.
    std::vector<double> pot_u(n + 1, 0.0), pot_v(m + 1, 0.0);
    std::vector<int> assigned_row(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        assigned_row[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1,
                                 std::numeric_limits<double>::infinity());
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = assigned_row[j0];
            int j1 = -1;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= m; ++j) {
                if (used[j])
                    continue;
                const double reduced =
                    entry(i0 - 1, j - 1) - pot_u[i0] - pot_v[j];
                if (reduced < minv[j]) {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    pot_u[assigned_row[j]] += delta;
                    pot_v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (assigned_row[j0] != 0);
        do {
            const int j1 = way[j0];
            assigned_row[j0] = assigned_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    LapResult result;
    result.row_to_col.assign(n, -1);
    for (int j = 1; j <= m; ++j)
        if (assigned_row[j] != 0)
            result.row_to_col[assigned_row[j] - 1] = j - 1;
    result.cost = 0.0;
    result.feasible = true;
    for (int i = 0; i < n; ++i) {
        const double c = entry(i, result.row_to_col[i]);
        if (c >= kForbidden / 2) {
            result.feasible = false;
            return result;
        }
        result.cost += c;
    }
    return result;
}

Eigen::MatrixXd feature_distances(const PercentileFeatures &gamma_x,
                                  const PercentileFeatures &gamma_y)
{
    if (gamma_x.values.cols() != gamma_y.values.cols())
        throw Error("feature_distances: percentile counts differ");
    const int u = static_cast<int>(gamma_x.values.rows());
    const int v = static_cast<int>(gamma_y.values.rows());
    Eigen::MatrixXd d(u, v);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j)
            d(i, j) = (gamma_x.values.row(i) - gamma_y.values.row(j)).norm();
    return d;
}

MatchMask build_mask(const PercentileFeatures &gamma_x,
                     const PercentileFeatures &gamma_y, int n_lap,
                     std::vector<double> *round_costs)
{
    const int u = static_cast<int>(gamma_x.values.rows());
    const int v = static_cast<int>(gamma_y.values.rows());

    MatchMask mask;
    if (u > v) {
        // Behaviour for u > v is left open by the construction; fall back
        // to allowing everything.
        mask.allowed.setConstant(u, v, true);
        return mask;
    }

    mask.allowed.setConstant(u, v, false);
    const Eigen::MatrixXd d = feature_distances(gamma_x, gamma_y);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> forbidden =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(u, v,
                                                                      false);
    for (int round = 0; round < n_lap; ++round) {
        const LapResult lap = lap_solve(d, &forbidden);
        if (!lap.feasible) {
            mask.truncated = true;
            break;
        }
        if (round_costs)
            round_costs->push_back(lap.cost);
        for (int i = 0; i < u; ++i) {
            mask.allowed(i, lap.row_to_col[i]) = true;
            forbidden(i, lap.row_to_col[i]) = true;
        }
    }
    return mask;
}

std::string distances_to_csv(const Eigen::MatrixXd &distances)
{
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < distances.rows(); ++i) {
        for (int j = 0; j < distances.cols(); ++j)
            out << (j ? "," : "") << distances(i, j);
        out << '\n';
    }
    return out.str();
}

std::string mask_to_csv(const MatchMask &mask)
{
    std::ostringstream out;
    for (int i = 0; i < mask.rows(); ++i) {
        for (int j = 0; j < mask.cols(); ++j)
            out << (j ? "," : "") << (mask.allowed(i, j) ? 1 : 0);
        out << '\n';
    }
    return out.str();
}

} // namespace polymatch
