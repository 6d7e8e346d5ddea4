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

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "dncbeta/errors.hpp"
#include "dncbeta/special_functions.hpp"
#include "oracles.hpp"

using namespace dncbeta;
using divcdf::Axis;
using divcdf::Method;
using series::DistParams;

TEST_CASE("direct_cdf reference cases") {
  const auto p1 = DistParams::from_degrees(2, 4, 0.5, 0.5, 0.7);
  CHECK(std::fabs(oracle::direct_cdf(p1) - 0.8967439) < 5e-8);
  const auto p2 = DistParams::from_degrees(8, 15, 4, 9, 0.6);
  CHECK(std::fabs(oracle::direct_cdf(p2) - 0.9756436) < 5e-8);
}

TEST_CASE("direct_cdf degenerates to the central beta") {
  const DistParams p{2.5, 3.5, 0.0, 0.0, 0.3};
  CHECK(oracle::direct_cdf(p) == sf::reg_inc_beta({0.3, 2.5, 3.5}));
}

TEST_CASE("line_exact reference cases") {
  const DistParams p{2.5, 3.5, 3.125, 0.125, 0.3};
  CHECK(std::fabs(oracle::line_exact(p, 0, Axis::row) - 0.013639) < 1e-6);
  // Published as 0.048552; the digits are transposed in print (the
  // four column sums must add to the published 0.0593450).
  CHECK(std::fabs(oracle::line_exact(p, 0, Axis::column) - 0.048522) < 1e-6);
}

TEST_CASE("line_exact with a degenerate inner axis") {
  const DistParams p{2.0, 3.0, 1.5, 0.0, 0.4};
  for (std::size_t j = 0; j < 4; ++j) {
    const double w = series::poisson_weights(1.5, j + 1).back();
    const double expected =
        w * sf::reg_inc_beta({0.4, 2.0 + static_cast<double>(j), 3.0});
    CHECK(std::fabs(oracle::line_exact(p, j, Axis::row) - expected) < 1e-15);
  }
}

TEST_CASE("rows and columns add up to the full sum") {
  const DistParams p{1.5, 2.5, 3.0, 2.0, 0.55};
  const double full = oracle::direct_cdf(p);
  const oracle::OracleConfig config{};
  double row_total = 0.0;
  const std::size_t rows = oracle::axis_extent(p.delta1, config);
  for (std::size_t j = 0; j < rows; ++j) {
    row_total += oracle::line_exact(p, j, Axis::row);
  }
  CHECK(std::fabs(row_total - full) < 1e-11);
  double col_total = 0.0;
  const std::size_t cols = oracle::axis_extent(p.delta2, config);
  for (std::size_t l = 0; l < cols; ++l) {
    col_total += oracle::line_exact(p, l, Axis::column);
  }
  CHECK(std::fabs(col_total - full) < 1e-11);
}

TEST_CASE("tightening the tail target is self-consistent") {
  const DistParams p{2.0, 4.0, 6.0, 3.0, 0.45};
  oracle::OracleConfig coarse;
  coarse.tail_target = 1e-9;
  oracle::OracleConfig fine;
  fine.tail_target = 5e-10;
  const double vc = oracle::direct_cdf(p, coarse);
  const double vf = oracle::direct_cdf(p, fine);
  CHECK(std::fabs(vf - vc) < coarse.tail_target);
}

TEST_CASE("compare reference cases") {
  const auto p1 = DistParams::from_degrees(2, 4, 0.5, 0.5, 0.7);
  const auto c1 = oracle::compare(p1, {}, Method::div1);
  CHECK(c1.bound_respected);
  CHECK(std::fabs(c1.error - 2.61e-6) / 2.61e-6 < 0.02);

  const auto p2 = DistParams::from_degrees(6, 8, 5, 25, 0.3);
  const auto c2 = oracle::compare(p2, {}, Method::div1);
  CHECK(c2.bound_respected);
  CHECK(std::fabs(c2.error - 8.42e-7) / 8.42e-7 < 0.02);

  const DistParams degenerate{2.0, 3.0, 0.0, 0.0, 0.4};
  const auto c3 = oracle::compare(degenerate, {}, Method::div2);
  CHECK(std::fabs(c3.error) < 1e-13);
}

TEST_CASE("compare keeps the truncation error nonnegative") {
  testor::Rng rng(606);
  for (int i = 0; i < 40; ++i) {
    const DistParams p{rng.uniform(0.5, 50.0), rng.uniform(0.5, 50.0),
                       rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0),
                       rng.uniform(0.01, 0.99)};
    for (Method m : {Method::div1, Method::div2}) {
      const auto cmp = oracle::compare(p, {}, m);
      CHECK(cmp.error >= -1e-13);
      CHECK(cmp.bound_respected);
    }
  }
}

TEST_CASE("oracle budget and config validation") {
  const DistParams p{1.0, 1.0, 40.0, 1.0, 0.5};
  oracle::OracleConfig tiny;
  tiny.max_terms_per_axis = 10;
  CHECK_THROWS_AS(oracle::direct_cdf(p, tiny), resource_error);

  oracle::OracleConfig bad;
  bad.tail_target = 1e-6;  // looser than the allowed ceiling
  CHECK_THROWS_AS(oracle::direct_cdf(p, bad), std::domain_error);
}

TEST_CASE("fixed grid preset covers at least 100 terms per axis") {
  const auto grid = oracle::OracleConfig::fixed_grid();
  CHECK(oracle::axis_extent(0.25, grid) == 100);
  CHECK(oracle::axis_extent(12.0, grid) == 100);
  // Still adaptive when the tail demands more than the floor.
  CHECK(oracle::axis_extent(600.0, grid) > 100);
}
