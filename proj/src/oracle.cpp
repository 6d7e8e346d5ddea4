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

#include "dncbeta/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dncbeta/errors.hpp"

namespace dncbeta::oracle {

namespace {

using divcdf::Axis;
using divcdf::Method;
using series::DistParams;

// Sums the full rectangle with the given outer axis, outer lines in
// ascending index, items within a line in ascending inner index.  The
// per-cell arithmetic matches series::matrix_item exactly.
double rect_sum(const DistParams& params, std::size_t j_extent,
                std::size_t l_extent, Axis outer_axis) {
  const std::vector<double> w1 = series::poisson_weights(params.delta1, j_extent);
  const std::vector<double> w2 = series::poisson_weights(params.delta2, l_extent);
  double total = 0.0;
  if (outer_axis == Axis::row) {
    for (std::size_t j = 0; j < j_extent; ++j) {
      for (std::size_t l = 0; l < l_extent; ++l) {
        total += series::series_term(w1[j], w2[l], params.x,
                                     params.a + static_cast<double>(j),
                                     params.b + static_cast<double>(l));
      }
    }
  } else {
    for (std::size_t l = 0; l < l_extent; ++l) {
      for (std::size_t j = 0; j < j_extent; ++j) {
        total += series::series_term(w1[j], w2[l], params.x,
                                     params.a + static_cast<double>(j),
                                     params.b + static_cast<double>(l));
      }
    }
  }
  return std::min(total, 1.0);
}

double ordered_cdf(const DistParams& params, const OracleConfig& config,
                   Axis outer_axis) {
  series::check_series(params);
  check(config);
  if (params.x == 0.0) return 0.0;
  if (params.x == 1.0) return 1.0;
  const std::size_t j_extent = axis_extent(params.delta1, config);
  const std::size_t l_extent = axis_extent(params.delta2, config);
  return rect_sum(params, j_extent, l_extent, outer_axis);
}

}  // namespace

void check(const OracleConfig& config) {
  if (!(config.tail_target > 0.0) || !(config.tail_target <= 1e-8)) {
    throw std::domain_error("oracle tail target must lie in (0, 1e-8]");
  }
  if (config.max_terms_per_axis == 0) {
    throw std::domain_error("oracle per-axis budget must be positive");
  }
}

std::size_t axis_extent(double delta, const OracleConfig& config) {
  const std::size_t adaptive =
      divcdf::find_boundary(delta, config.tail_target);
  const std::size_t extent = std::max(adaptive, config.min_terms_per_axis);
  if (extent > config.max_terms_per_axis) {
    throw resource_error("oracle truncation exceeds the per-axis budget");
  }
  return extent;
}

double direct_cdf(const DistParams& params, const OracleConfig& config) {
  return ordered_cdf(params, config, Axis::row);
}

double line_exact(const DistParams& params, std::size_t index,
                  divcdf::Axis axis, const OracleConfig& config) {
  series::check_series(params);
  check(config);
  const double fixed_delta = axis == Axis::row ? params.delta1 : params.delta2;
  const double inner_delta = axis == Axis::row ? params.delta2 : params.delta1;
  const double fixed_w = series::poisson_weights(fixed_delta, index + 1).back();
  const std::size_t extent = axis_extent(inner_delta, config);
  const std::vector<double> inner_w = series::poisson_weights(inner_delta, extent);
  double total = 0.0;
  for (std::size_t i = 0; i < extent; ++i) {
    const double sa =
        params.a + static_cast<double>(axis == Axis::row ? index : i);
    const double sb =
        params.b + static_cast<double>(axis == Axis::row ? i : index);
    total += series::series_term(fixed_w, inner_w[i], params.x, sa, sb);
  }
  return total;
}

ErrorReport compare(const DistParams& params,
                    const divcdf::ErrorControls& controls,
                    divcdf::Method method, const OracleConfig& config) {
  const divcdf::CdfReport run = divcdf::beta_cdf(params, method, controls);
  ErrorReport report;
  if (params.x <= 0.0 || params.x >= 1.0) {
    report.p_oracle = params.x <= 0.0 ? 0.0 : 1.0;
  } else {
    const Axis outer = method == Method::div1 ? Axis::row : Axis::column;
    report.p_oracle = ordered_cdf(params, config, outer);
  }
  report.p_method = run.p_hat;
  report.error = report.p_oracle - report.p_method;
  report.upper_bound = run.upper_bound;
  report.control_line = run.control_line;
  report.bound_respected = report.error <= report.upper_bound &&
                           report.upper_bound <= report.control_line;
  return report;
}

}  // namespace dncbeta::oracle
