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

#ifndef DNCBETA_ORACLE_HPP
#define DNCBETA_ORACLE_HPP

#include <cstddef>

#include "dncbeta/div.hpp"
#include "dncbeta/series.hpp"

namespace dncbeta::oracle {

/// Truncation policy of the direct-summation reference.
struct OracleConfig {
  /// Poisson mass allowed to remain uncovered on each axis.
  double tail_target = 1e-12;
  std::size_t max_terms_per_axis = 5000;
  /// Floor on the per-axis extent; the fixed-grid preset raises it to
  /// reproduce direct calculations run on a preset rectangle.
  std::size_t min_terms_per_axis = 0;

  /// At least 100 items per row and column, the classical direct
  /// calculation setup.
  static OracleConfig fixed_grid() { return {1e-12, 5000, 100}; }
};

void check(const OracleConfig& config);

/// Extent of one truncation axis under the config.
std::size_t axis_extent(double delta, const OracleConfig& config);

/// Direct truncated sum of the series over a rectangle large enough
/// that both Poisson tails are below tail_target.  Row-major
/// deterministic accumulation.
double direct_cdf(const series::DistParams& params,
                  const OracleConfig& config = {});

/// Exact sum of one full row (axis = row, index = j) or column, the
/// inner axis truncated at its tail target.
double line_exact(const series::DistParams& params, std::size_t index,
                  divcdf::Axis axis, const OracleConfig& config = {});

struct ErrorReport {
  double p_oracle = 0.0;
  double p_method = 0.0;
  double error = 0.0;  // p_oracle - p_method
  double upper_bound = 0.0;
  double control_line = 0.0;
  bool bound_respected = false;  // error <= upper_bound <= control_line
};

/// Runs the chosen method and the direct reference on the same
/// parameters.  The reference accumulates in the method's line order
/// (rows for div1, columns for div2) so the shared cells cancel
/// exactly and the truncation error keeps its sign in floating point.
ErrorReport compare(const series::DistParams& params,
                    const divcdf::ErrorControls& controls,
                    divcdf::Method method, const OracleConfig& config = {});

}  // namespace dncbeta::oracle

#endif  // DNCBETA_ORACLE_HPP
