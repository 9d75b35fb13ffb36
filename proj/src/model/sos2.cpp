#include "polymatch/model/sos2.hpp"

#include <algorithm>
#include <cmath>

namespace polymatch {

unsigned gray_code(unsigned c) { return c ^ (c >> 1); }

int gray_bits(int bins)
{
    int bits = 0;
    while ((1 << bits) < bins)
        ++bits;
    return bits;
}

std::vector<double> sos2_grid(int bins)
{
    std::vector<double> grid(bins + 1);
    for (int m = 0; m <= bins; ++m)
        grid[m] = -1.0 + 2.0 * m / bins;
    return grid;
}

std::vector<int> sos2_points_with_bit(int bins, int bit, bool set)
{
    std::vector<int> points;
    for (int m = 0; m <= bins; ++m) {
        bool all_match = true;
        // Cells incident to grid point m are m-1 and m (0-based cells).
        for (int cell : {m - 1, m}) {
            if (cell < 0 || cell >= bins)
                continue;
            const bool has_bit = (gray_code(cell) >> bit) & 1u;
            if (has_bit != set) {
                all_match = false;
                break;
            }
        }
        if (all_match)
            points.push_back(m);
    }
    return points;
}

int sos2_cell_of(double x, int bins)
{
    const double clamped = std::clamp(x, -1.0, 1.0);
    const double t = (clamped + 1.0) / 2.0 * bins;
    return std::clamp(static_cast<int>(std::ceil(t)) - 1, 0, bins - 1);
}

double pwl_square(double x, int bins)
{
    const auto grid = sos2_grid(bins);
    const int cell = sos2_cell_of(x, bins);
    const double lo = grid[cell], hi = grid[cell + 1];
    const double frac = (x - lo) / (hi - lo);
    return (1.0 - frac) * lo * lo + frac * hi * hi;
}

} // namespace polymatch
