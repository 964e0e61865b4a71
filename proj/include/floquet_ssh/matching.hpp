#pragma once

#include <span>
#include <vector>

#include "floquet_ssh/complex_matrix.hpp"

namespace fssh {

// Folds x into (-modulus/2, modulus/2]. A nonpositive modulus leaves x unchanged.
double fold_into_zone(double x, double modulus);

// |a - b| with the real part of the difference folded by `modulus` (0 = no folding).
double quasi_distance(const Complex& a, const Complex& b, double modulus);

// Minimum-cost perfect matching on a square cost matrix given row-major.
// Returns assignment[row] = column.
std::vector<std::size_t> min_cost_assignment(std::span<const double> cost, std::size_t n);

// Pairs a with b by minimum total quasi_distance and returns, for each a[i],
// the distance to its partner. Both multisets must have the same size.
std::vector<double> matched_deviations(std::span<const Complex> a, std::span<const Complex> b,
                                       double modulus);

double max_matched_distance(std::span<const Complex> a, std::span<const Complex> b,
                            double modulus);

}  // namespace fssh
