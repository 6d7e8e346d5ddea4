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

#include "dncbeta/series.hpp"

#include <cmath>
#include <stdexcept>

#include "dncbeta/errors.hpp"
#include "dncbeta/special_functions.hpp"

namespace dncbeta::series {

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0)) {
    throw std::domain_error("non-centrality must be nonnegative");
  }
  if (!(delta < kMaxDelta)) {
    throw std::range_error("unsupported non-centrality magnitude");
  }
}

}  // namespace

DistParams DistParams::from_degrees(double n1, double n2, double lambda1,
                                    double lambda2, double x) {
  return DistParams{n1 / 2.0, n2 / 2.0, lambda1 / 2.0, lambda2 / 2.0, x};
}

void check_shape(const DistParams& params) {
  if (!(params.a > 0.0) || !std::isfinite(params.a)) {
    throw std::domain_error("shape a must be positive");
  }
  if (!(params.b > 0.0) || !std::isfinite(params.b)) {
    throw std::domain_error("shape b must be positive");
  }
  check_delta(params.delta1);
  check_delta(params.delta2);
  if (!std::isfinite(params.x)) {
    throw std::domain_error("evaluation point must be finite");
  }
}

void check_series(const DistParams& params) {
  check_shape(params);
  if (!(params.x >= 0.0 && params.x <= 1.0)) {
    throw std::domain_error("series evaluation requires x in [0, 1]");
  }
}

std::vector<double> poisson_weights(double delta, std::size_t count) {
  check_delta(delta);
  if (count == 0) {
    throw std::domain_error("poisson_weights: count must be at least 1");
  }
  std::vector<double> weights(count);
  weights[0] = std::exp(-delta);
  for (std::size_t k = 1; k < count; ++k) {
    weights[k] = weights[k - 1] * delta / static_cast<double>(k);
  }
  return weights;
}

double poisson_tail(double delta, std::size_t k) {
  check_delta(delta);
  if (k == 0) return 1.0;
  if (delta == 0.0) return 0.0;

  // Run the weight recurrence through the kept terms.
  double w = std::exp(-delta);
  double partial = w;
  for (std::size_t j = 1; j < k; ++j) {
    w *= delta / static_cast<double>(j);
    partial += w;
  }
  if (partial < 0.5) {
    // The tail dominates; the complement loses nothing.
    return 1.0 - partial;
  }
  // Sum the tail forward from term k for full relative precision.
  double tail = 0.0;
  double term = w * delta / static_cast<double>(k);
  for (std::size_t j = k; term > 0.0; ++j) {
    tail += term;
    term *= delta / static_cast<double>(j + 1);
    if (term < tail * 1e-18) break;
  }
  if (tail > 1.0) return 1.0;
  return tail;
}

double series_term(double w1, double w2, double x, double a_plus_j,
                   double b_plus_l) {
  return w1 * w2 * sf::reg_inc_beta({x, a_plus_j, b_plus_l});
}

double matrix_item(const DistParams& params, std::size_t j, std::size_t l) {
  check_series(params);
  const double w1 = poisson_weights(params.delta1, j + 1).back();
  const double w2 = poisson_weights(params.delta2, l + 1).back();
  return series_term(w1, w2, params.x, params.a + static_cast<double>(j),
                     params.b + static_cast<double>(l));
}

MatrixSlab matrix_slab(const DistParams& params, std::size_t rows,
                       std::size_t cols, const SlabOptions& options) {
  check_series(params);
  if (rows == 0 || cols == 0) {
    throw std::domain_error("matrix_slab: rows and cols must be at least 1");
  }
  if (rows > options.cell_budget / cols) {
    throw resource_error("matrix_slab: cell budget exceeded");
  }
  MatrixSlab slab;
  slab.rows = rows;
  slab.cols = cols;
  slab.params = params;
  slab.items.resize(rows * cols);

  const std::vector<double> w1 = poisson_weights(params.delta1, rows);
  const std::vector<double> w2 = poisson_weights(params.delta2, cols);
  for (std::size_t j = 0; j < rows; ++j) {
    const double aj = params.a + static_cast<double>(j);
    if (options.use_recurrence) {
      double ib = sf::reg_inc_beta({params.x, aj, params.b});
      for (std::size_t l = 0; l < cols; ++l) {
        const double bl = params.b + static_cast<double>(l);
        slab.items[j * cols + l] = w1[j] * w2[l] * ib;
        ib = sf::inc_beta_step_b({params.x, aj, bl}, ib);
      }
    } else {
      for (std::size_t l = 0; l < cols; ++l) {
        slab.items[j * cols + l] =
            series_term(w1[j], w2[l], params.x, aj,
                        params.b + static_cast<double>(l));
      }
    }
  }
  return slab;
}

}  // namespace dncbeta::series
