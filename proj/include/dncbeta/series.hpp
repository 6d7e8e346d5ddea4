// Copyright 2026 The dncbeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DNCBETA_SERIES_HPP
#define DNCBETA_SERIES_HPP

#include <cstddef>
#include <vector>

namespace dncbeta::series {

// Non-centrality halves above this underflow e^{-delta} in double
// precision; such inputs are rejected rather than silently degraded.
inline constexpr double kMaxDelta = 700.0;

/// Parameters of the doubly non-central beta CDF
///   B(x) = e^{-(d1+d2)} sum_{j,l} d1^j d2^l / (j! l!) I_x(j+a, l+b),
/// with a = n1/2, b = n2/2, d1 = lambda1/2, d2 = lambda2/2.
struct DistParams {
  double a;       // first shape, > 0
  double b;       // second shape, > 0
  double delta1;  // half non-centrality of the numerator, in [0, 700)
  double delta2;  // half non-centrality of the denominator, in [0, 700)
  double x;       // evaluation point

  /// Halves user-facing degrees of freedom / non-centralities.
  static DistParams from_degrees(double n1, double n2, double lambda1,
                                 double lambda2, double x);
};

/// Validates shapes and non-centralities (x unchecked; CDF evaluators
/// clamp it).  Throws std::domain_error / std::range_error.
void check_shape(const DistParams& params);

/// check_shape plus the series-domain requirement x in [0, 1].
void check_series(const DistParams& params);

/// Poisson masses w_k = e^{-delta} delta^k / k! for k = 0..count-1,
/// by the multiplicative recurrence w_0 = e^{-delta}, w_k = w_{k-1} delta/k.
std::vector<double> poisson_weights(double delta, std::size_t count);

/// Upper Poisson tail 1 - e^{-delta} sum_{j<k} delta^j/j!, clamped to
/// [0, 1].  Small tails are accumulated forward from term k so the
/// result keeps full relative precision.
double poisson_tail(double delta, std::size_t k);

/// One series item L_{j,l} = w1_j * w2_l * I_x(j+a, l+b).
double matrix_item(const DistParams& params, std::size_t j, std::size_t l);

/// Assembles one item from precomputed Poisson factors.  Every code
/// path that sums series items goes through this helper so identical
/// cells round identically everywhere.
double series_term(double w1, double w2, double x, double a_plus_j,
                   double b_plus_l);

/// A dense rows x cols block of the series matrix.
struct MatrixSlab {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> items;  // row-major, rows*cols entries
  DistParams params{};

  double at(std::size_t j, std::size_t l) const { return items[j * cols + l]; }
};

struct SlabOptions {
  /// Evaluate incomplete betas along each row by the ascending-b
  /// recurrence instead of one continued fraction per cell.
  bool use_recurrence = false;
  /// Maximum rows*cols accepted before a resource_error.
  std::size_t cell_budget = 10'000'000;
};

/// Dense slab of L_{j,l} for j < rows, l < cols.
MatrixSlab matrix_slab(const DistParams& params, std::size_t rows,
                       std::size_t cols, const SlabOptions& options = {});

}  // namespace dncbeta::series

#endif  // DNCBETA_SERIES_HPP
