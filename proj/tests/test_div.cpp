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

#include "dncbeta/div.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "dncbeta/oracle.hpp"
#include "dncbeta/special_functions.hpp"
#include "oracles.hpp"

using namespace dncbeta;
using divcdf::Axis;
using divcdf::BetaEval;
using divcdf::Method;
using series::DistParams;

namespace {

double rel_gap(double computed, double reference) {
  return std::fabs(computed - reference) / std::fabs(reference);
}

}  // namespace

TEST_CASE("find_boundary") {
  CHECK(divcdf::find_boundary(0.0, 1e-5) == 1);
  CHECK(divcdf::find_boundary(3.125, 1e-5) == 14);
  CHECK(divcdf::find_boundary(0.25, 1e-5) == 5);
  CHECK_THROWS_AS(divcdf::find_boundary(1.0, 0.0), std::domain_error);
}

TEST_CASE("boundary tail is strictly inside the budget") {
  testor::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double delta = rng.uniform(0.0, 60.0);
    const double eps = std::pow(10.0, -rng.uniform(2.0, 8.0));
    const std::size_t k = divcdf::find_boundary(delta, eps);
    CHECK(series::poisson_tail(delta, k) < eps);
    if (k > 1) CHECK(series::poisson_tail(delta, k - 1) >= eps);
  }
}

TEST_CASE("line_sum_adaptive against published row diagnostics") {
  // Published line tables list their loop variable, one less than the
  // items actually covered by the published residual bound; the kept
  // count here is the published count plus one.
  const DistParams p{2.5, 3.5, 3.125, 0.125, 0.3};
  const auto row0 = divcdf::line_sum_adaptive(p, 0, Axis::row, 1e-7);
  CHECK(row0.trunc_count == 5);
  CHECK(std::fabs(row0.partial_sum - 0.013639) < 1e-6);
  CHECK(rel_gap(row0.residual_bound, 1.01e-8) < 0.02);
  CHECK(row0.residual_bound < 1e-7);

  const auto col0 = divcdf::line_sum_adaptive(p, 0, Axis::column, 1e-7);
  CHECK(col0.trunc_count == 17);
  CHECK(std::fabs(col0.partial_sum - 0.048522) < 1e-6);
  CHECK(rel_gap(col0.residual_bound, 3.40e-8) < 0.02);
}

TEST_CASE("line_sum_adaptive degenerate inner axis") {
  // delta2 = 0: one item covers the row exactly.
  const DistParams p{2.0, 3.0, 1.5, 0.0, 0.4};
  const auto row1 = divcdf::line_sum_adaptive(p, 1, Axis::row, 1e-7);
  CHECK(row1.trunc_count == 1);
  CHECK(row1.residual_bound == 0.0);
}

TEST_CASE("div1 and div2 reproduce the reference cases") {
  const auto p = DistParams::from_degrees(2, 4, 0.5, 0.5, 0.7);
  const auto r1 = divcdf::div1_cdf(p);
  CHECK(std::fabs(r1.p_hat - 0.8967413) < 5e-8);
  CHECK(rel_gap(r1.upper_bound, 6.71e-6) < 0.02);
  CHECK(rel_gap(r1.control_line, 1.05e-5) < 0.02);
  CHECK(r1.boundary == 5);
  CHECK(r1.item_count == 28);

  const auto r2 = divcdf::div2_cdf(p);
  CHECK(std::fabs(r2.p_hat - 0.8967373) < 5e-8);

  const auto p2 = DistParams::from_degrees(5, 7, 0.25, 6.25, 0.3);
  CHECK(std::fabs(divcdf::div1_cdf(p2).p_hat - 0.5685829) < 5e-8);
  const auto p3 = DistParams::from_degrees(5, 7, 6.25, 0.25, 0.3);
  CHECK(std::fabs(divcdf::div2_cdf(p3).p_hat - 0.0593450) < 5e-8);
}

TEST_CASE("degenerate non-centralities reduce to the central beta") {
  const DistParams p{1.0, 1.0, 0.0, 0.0, 0.5};
  const auto r1 = divcdf::div1_cdf(p);
  CHECK(r1.p_hat == 0.5);
  CHECK(r1.upper_bound == 0.0);
  const auto r2 = divcdf::div2_cdf(p);
  CHECK(r2.p_hat == r1.p_hat);

  const DistParams q{2.5, 3.5, 0.0, 0.0, 0.3};
  CHECK(divcdf::div1_cdf(q).p_hat == sf::reg_inc_beta({0.3, 2.5, 3.5}));
}

TEST_CASE("x outside the open unit interval short-circuits") {
  const DistParams low{2.0, 3.0, 1.0, 1.0, -0.5};
  const auto rl = divcdf::div1_cdf(low);
  CHECK(rl.p_hat == 0.0);
  CHECK(rl.upper_bound == 0.0);
  CHECK(rl.item_count == 0);

  const DistParams high{2.0, 3.0, 1.0, 1.0, 1.5};
  const auto rh = divcdf::div2_cdf(high);
  CHECK(rh.p_hat == 1.0);
  CHECK(rh.upper_bound == 0.0);
}

TEST_CASE("report internal consistency") {
  testor::Rng rng(2211);
  for (int i = 0; i < 25; ++i) {
    const DistParams p{rng.uniform(0.5, 30.0), rng.uniform(0.5, 30.0),
                       rng.uniform(0.0, 25.0), rng.uniform(0.0, 25.0),
                       rng.uniform(0.05, 0.95)};
    for (Method m : {Method::div1, Method::div2}) {
      const auto r = divcdf::beta_cdf(p, m);
      CHECK(r.p_hat >= 0.0);
      CHECK(r.p_hat <= 1.0);
      CHECK(r.upper_bound >= 0.0);
      CHECK(r.upper_bound <= r.control_line);
      CHECK(r.lines.size() == r.boundary);
      std::size_t items = 0;
      for (const auto& line : r.lines) {
        items += line.trunc_count;
        CHECK(line.residual_bound < 1e-7);
        CHECK(line.partial_sum >= 0.0);
      }
      CHECK(items == r.item_count);

      // Upper bound equals one minus the Poisson mass of region 0,
      // recomputed here from the stored truncation counts.
      const double outer_delta = m == Method::div1 ? p.delta1 : p.delta2;
      const double inner_delta = m == Method::div1 ? p.delta2 : p.delta1;
      const auto outer_w = series::poisson_weights(outer_delta, r.boundary);
      double covered = 0.0;
      for (const auto& line : r.lines) {
        double inner = 0.0;
        if (line.trunc_count > 0) {
          const auto inner_w =
              series::poisson_weights(inner_delta, line.trunc_count);
          for (double w : inner_w) inner += w;
        }
        covered += outer_w[line.index] * inner;
      }
      CHECK(std::fabs(r.upper_bound - (1.0 - covered)) < 1e-14);
    }
  }
}

TEST_CASE("methods agree within their control lines") {
  testor::Rng rng(5150);
  for (int i = 0; i < 40; ++i) {
    const DistParams p{rng.uniform(0.5, 40.0), rng.uniform(0.5, 40.0),
                       rng.uniform(0.0, 30.0), rng.uniform(0.0, 30.0),
                       rng.uniform(0.02, 0.98)};
    const auto r1 = divcdf::div1_cdf(p);
    const auto r2 = divcdf::div2_cdf(p);
    CHECK(std::fabs(r1.p_hat - r2.p_hat) <=
          r1.control_line + r2.control_line);
  }
}

TEST_CASE("complement identity within bounds") {
  testor::Rng rng(8321);
  for (int i = 0; i < 30; ++i) {
    const DistParams p{rng.uniform(0.5, 25.0), rng.uniform(0.5, 25.0),
                       rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0),
                       rng.uniform(0.05, 0.95)};
    const DistParams mirror{p.b, p.a, p.delta2, p.delta1, 1.0 - p.x};
    const auto r = divcdf::div1_cdf(p);
    const auto rm = divcdf::div1_cdf(mirror);
    const double s = r.p_hat + rm.p_hat;
    CHECK(s <= 1.0 + 1e-12);
    CHECK(s >= 1.0 - r.upper_bound - rm.upper_bound - 1e-12);
  }
}

TEST_CASE("stochastic-order monotonicity within bounds") {
  testor::Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    const double a = rng.uniform(0.5, 20.0);
    const double b = rng.uniform(0.5, 20.0);
    const double d1 = rng.uniform(0.0, 15.0);
    const double d2 = rng.uniform(0.0, 15.0);
    const double x = rng.uniform(0.05, 0.9);
    const double xp = x + rng.uniform(0.01, 0.09);

    const auto base = divcdf::div1_cdf({a, b, d1, d2, x});
    const auto right = divcdf::div1_cdf({a, b, d1, d2, xp});
    CHECK(right.p_hat + right.upper_bound >= base.p_hat);

    const auto more_d1 =
        divcdf::div1_cdf({a, b, d1 + rng.uniform(0.1, 5.0), d2, x});
    CHECK(more_d1.p_hat <=
          base.p_hat + base.upper_bound + more_d1.upper_bound);

    const auto more_d2 =
        divcdf::div1_cdf({a, b, d1, d2 + rng.uniform(0.1, 5.0), x});
    CHECK(more_d2.p_hat + more_d2.upper_bound + base.upper_bound >=
          base.p_hat);
  }
}

TEST_CASE("tightening the controls tightens the error") {
  testor::Rng rng(4242);
  for (int i = 0; i < 10; ++i) {
    const DistParams p{rng.uniform(0.5, 20.0), rng.uniform(0.5, 20.0),
                       rng.uniform(0.0, 15.0), rng.uniform(0.0, 15.0),
                       rng.uniform(0.05, 0.95)};
    const divcdf::ErrorControls coarse{1e-6, 1e-4};
    const divcdf::ErrorControls fine{5e-7, 5e-5};
    const auto rc = oracle::compare(p, coarse, Method::div1);
    const auto rf = oracle::compare(p, fine, Method::div1);
    CHECK(std::fabs(rf.error) <= std::fabs(rc.error) + rc.control_line);
  }
}

TEST_CASE("f transform") {
  const auto r1 = divcdf::f_cdf(2, 4, 1.5, 1.5, 6.94414, Method::div1);
  CHECK(std::fabs(r1.p_hat - 0.933729) < 5e-7);
  const auto r2 = divcdf::f_cdf(4, 30, 24, 5, 2.68966, Method::div1);
  CHECK(std::fabs(r2.p_hat - 0.057047) < 5e-7);

  CHECK(divcdf::f_cdf(2, 4, 1, 1, 0.0, Method::div1).p_hat == 0.0);
  CHECK(divcdf::f_cdf(2, 4, 1, 1, -3.0, Method::div2).p_hat == 0.0);
  CHECK_THROWS_AS(divcdf::f_cdf(2, 4, 1, 1, std::nan(""), Method::div1),
                  std::domain_error);
}

TEST_CASE("recurrence acceleration matches direct evaluation") {
  testor::Rng rng(31337);
  for (int i = 0; i < 10; ++i) {
    const DistParams p{rng.uniform(0.5, 20.0), rng.uniform(0.5, 20.0),
                       rng.uniform(0.0, 15.0), rng.uniform(0.0, 15.0),
                       rng.uniform(0.05, 0.95)};
    for (Method m : {Method::div1, Method::div2}) {
      const auto direct = divcdf::beta_cdf(p, m, {}, BetaEval::direct);
      const auto accel = divcdf::beta_cdf(p, m, {}, BetaEval::recurrence);
      CHECK(std::fabs(direct.p_hat - accel.p_hat) < 1e-12);
      CHECK(direct.item_count == accel.item_count);
    }
  }
}

TEST_CASE("control validation") {
  CHECK_THROWS_AS(divcdf::div1_cdf({1, 1, 1, 1, 0.5}, {1e-4, 1e-6}),
                  std::domain_error);
  CHECK_THROWS_AS(divcdf::div1_cdf({1, 1, 1, 1, 0.5}, {1e-3, 0.2}),
                  std::domain_error);
  CHECK_THROWS_AS(divcdf::div1_cdf({1, 1, 1, 1, 0.5}, {0.0, 1e-5}),
                  std::domain_error);
  CHECK_NOTHROW(divcdf::div1_cdf({1, 1, 1, 1, 0.5}, {1e-5, 1e-5}));
}

TEST_CASE("empty lines: trailing row already inside the budget") {
  // With eps_line = eps_tail = 1e-3 and delta1 = 2 the ninth row's
  // whole-row bound e^-2 2^8/8! = 8.6e-4 is under the line budget, so
  // the row contributes nothing.
  const DistParams p{1.5, 2.0, 2.0, 1.0, 0.4};
  const divcdf::ErrorControls controls{1e-3, 1e-3};
  const auto r = divcdf::div1_cdf(p, controls);
  CHECK(r.boundary == 9);
  CHECK(r.lines.back().trunc_count == 0);
  CHECK(r.lines.back().partial_sum == 0.0);
  CHECK(r.lines.back().residual_bound < 1e-3);
  const auto cmp = oracle::compare(p, controls, Method::div1);
  CHECK(cmp.bound_respected);
  CHECK(cmp.error >= 0.0);
}

TEST_CASE("empty lines: leading rows of a right-shifted Poisson") {
  const DistParams p{1.0, 1.0, 30.0, 0.5, 0.5};
  const auto r = divcdf::div1_cdf(p);
  std::size_t empties = 0;
  for (const auto& line : r.lines) {
    if (line.trunc_count == 0) ++empties;
  }
  CHECK(empties >= 5);
  CHECK(r.lines.front().trunc_count == 0);
  const auto cmp = oracle::compare(p, {}, Method::div1);
  CHECK(cmp.bound_respected);
}
