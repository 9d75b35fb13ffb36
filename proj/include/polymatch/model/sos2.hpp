#pragma once

#include <vector>

namespace polymatch {

/// Reflected binary code of cell index c (cells numbered from 0).
unsigned gray_code(unsigned c);

/// Number of binaries for b cells.
int gray_bits(int bins);

/// Uniform grid of b+1 points over [-1, 1].
std::vector<double> sos2_grid(int bins);

/// Grid points whose every incident cell has bit `bit` set (resp. clear);
/// the two restriction sets of the logarithmic sos2 encoding.
std::vector<int> sos2_points_with_bit(int bins, int bit, bool set);

/// Index of the grid cell containing x (boundary values go to the lower
/// cell, except -1 itself).
int sos2_cell_of(double x, int bins);

/// The piecewise-linear interpolant of x^2 induced by the sos2 encoding
/// (chord between the bracketing grid points).
double pwl_square(double x, int bins);

} // namespace polymatch
