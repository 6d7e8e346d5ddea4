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

#ifndef DNCBETA_DIV_HPP
#define DNCBETA_DIV_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "dncbeta/series.hpp"

namespace dncbeta::divcdf {

/// The two segmentations of the series matrix: div1 truncates whole
/// rows past a boundary index and each kept row adaptively; div2 is
/// the column-major mirror.
enum class Method { div1, div2 };

std::string to_string(Method method);

enum class Axis { row, column };

/// How incomplete betas are evaluated along a line: one continued
/// fraction per item, or a single evaluation advanced by the ascending
/// shape recurrences.
enum class BetaEval { direct, recurrence };

/// Truncation budgets.  eps_line bounds the residual of every kept
/// line, eps_tail bounds the total mass of the dropped lines.
struct ErrorControls {
  double eps_line = 1e-7;
  double eps_tail = 1e-5;
};

void check(const ErrorControls& controls);

/// Bookkeeping for one kept line of region 0.
struct LineDiagnostic {
  std::size_t index = 0;        // j (div1) or l (div2)
  std::size_t trunc_count = 0;  // items kept in this line
  double partial_sum = 0.0;     // sum of the kept items
  double residual_bound = 0.0;  // weight * poisson_tail(., trunc_count)
};

struct CdfReport {
  double p_hat = 0.0;          // truncated series sum, in [0, 1]
  double upper_bound = 0.0;    // computable total error bound
  double control_line = 0.0;   // a-priori budget: boundary*eps_line + eps_tail
  std::size_t boundary = 0;    // first dropped line index
  std::size_t item_count = 0;  // total items summed
  std::vector<LineDiagnostic> lines;
  Method method = Method::div1;
};

/// Smallest k >= 1 with poisson_tail(delta, k) < eps_tail (strict).
std::size_t find_boundary(double delta, double eps_tail);

/// Adaptive truncation of a single line: finds the smallest count n
/// with weight(fixed_index) * poisson_tail(inner_delta, n) < eps_line
/// and sums the first n items.  axis selects whether fixed_index is a
/// row (inner axis l, inner delta delta2) or a column (inner axis j,
/// inner delta delta1).
LineDiagnostic line_sum_adaptive(const series::DistParams& params,
                                 std::size_t fixed_index, Axis axis,
                                 double eps_line,
                                 BetaEval eval = BetaEval::direct);

/// Row-segmented CDF with guaranteed bound:
///   0 <= CDF - p_hat < upper_bound < control_line.
/// x <= 0 and x >= 1 short-circuit to exact 0 / 1 with zero bounds.
CdfReport div1_cdf(const series::DistParams& params,
                   const ErrorControls& controls = {},
                   BetaEval eval = BetaEval::direct);

/// Column-segmented mirror of div1_cdf.
CdfReport div2_cdf(const series::DistParams& params,
                   const ErrorControls& controls = {},
                   BetaEval eval = BetaEval::direct);

/// Dispatches on method.
CdfReport beta_cdf(const series::DistParams& params, Method method,
                   const ErrorControls& controls = {},
                   BetaEval eval = BetaEval::direct);

/// The monotone substitution from the F scale to the beta scale,
/// x = n1 f / (n1 f + n2), saturating at 1 when n1 * f overflows.
double f_to_x(double n1, double n2, double f);

/// Doubly non-central F CDF at f, via f_to_x and the chosen beta
/// method.  f <= 0 yields exact 0.  Bounds carry over unchanged.
CdfReport f_cdf(double n1, double n2, double lambda1, double lambda2,
                double f, Method method, const ErrorControls& controls = {},
                BetaEval eval = BetaEval::direct);

}  // namespace dncbeta::divcdf

#endif  // DNCBETA_DIV_HPP
