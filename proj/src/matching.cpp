#include "floquet_ssh/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fssh {

double fold_into_zone(double x, double modulus) {
  if (!(modulus > 0.0)) return x;
  double r = x - modulus * std::ceil((x - 0.5 * modulus) / modulus);
  if (r <= -0.5 * modulus) r += modulus;
  if (r > 0.5 * modulus) r -= modulus;
  return r;
}

double quasi_distance(const Complex& a, const Complex& b, double modulus) {
  const double dre = fold_into_zone(a.real() - b.real(), modulus);
  return std::hypot(dre, a.imag() - b.imag());
}

// Shortest augmenting path Hungarian algorithm with potentials, O(n^3).
std::vector<std::size_t> min_cost_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) throw std::invalid_argument("cost matrix must be n x n");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internal indexing, column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

std::vector<double> matched_deviations(std::span<const Complex> a, std::span<const Complex> b,
                                       double modulus) {
  if (a.size() != b.size()) throw std::invalid_argument("multisets differ in size");
  const std::size_t n = a.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = quasi_distance(a[i], b[j], modulus);
  const auto assignment = min_cost_assignment(cost, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = cost[i * n + assignment[i]];
  return out;
}

double max_matched_distance(std::span<const Complex> a, std::span<const Complex> b,
                            double modulus) {
  const auto d = matched_deviations(a, b, modulus);
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

}  // namespace fssh
