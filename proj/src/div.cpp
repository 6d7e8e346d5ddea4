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

#include "dncbeta/special_functions.hpp"

namespace dncbeta::divcdf {

namespace {

// Lazily grown Poisson masses sharing one multiplicative recurrence,
// so every caller sees bit-identical weights.
class WeightSeq {
 public:
  explicit WeightSeq(double delta) : delta_(delta) {}

  double at(std::size_t k) {
    if (weights_.empty()) weights_.push_back(std::exp(-delta_));
    while (weights_.size() <= k) {
      weights_.push_back(weights_.back() * delta_ /
                         static_cast<double>(weights_.size()));
    }
    return weights_[k];
  }

 private:
  double delta_;
  std::vector<double> weights_;
};

// Memoized poisson_tail values for one delta.
class TailSeq {
 public:
  explicit TailSeq(double delta) : delta_(delta) {}

  double at(std::size_t k) {
    while (tails_.size() <= k) {
      tails_.push_back(series::poisson_tail(delta_, tails_.size()));
    }
    return tails_[k];
  }

 private:
  double delta_;
  std::vector<double> tails_;
};

struct LineContext {
  const series::DistParams* params;
  Axis axis;            // orientation of the fixed line
  WeightSeq* inner_w;   // Poisson masses along the line
  TailSeq* inner_tail;  // tails along the line
  BetaEval eval;
};

double shape_a(const LineContext& ctx, std::size_t fixed, std::size_t inner) {
  return ctx.params->a +
         static_cast<double>(ctx.axis == Axis::row ? fixed : inner);
}

double shape_b(const LineContext& ctx, std::size_t fixed, std::size_t inner) {
  return ctx.params->b +
         static_cast<double>(ctx.axis == Axis::row ? inner : fixed);
}

// Sums one line until its residual bound drops below eps_line.  The
// kept count is the smallest n with fixed_weight * tail(n) < eps_line;
// n = 0 (nothing kept) is reached when the whole-line bound is already
// inside the budget.
LineDiagnostic adaptive_line(const LineContext& ctx, std::size_t fixed_index,
                             double fixed_weight, double eps_line) {
  LineDiagnostic line;
  line.index = fixed_index;

  const double x = ctx.params->x;
  std::size_t n = 0;
  double partial = 0.0;
  double ib = 0.0;
  bool ib_ready = false;
  while (fixed_weight * ctx.inner_tail->at(n) >= eps_line) {
    const double sa = shape_a(ctx, fixed_index, n);
    const double sb = shape_b(ctx, fixed_index, n);
    if (ctx.eval == BetaEval::recurrence) {
      if (!ib_ready) {
        ib = sf::reg_inc_beta({x, sa, sb});
        ib_ready = true;
      }
      partial += fixed_weight * ctx.inner_w->at(n) * ib;
      ib = ctx.axis == Axis::row ? sf::inc_beta_step_b({x, sa, sb}, ib)
                                 : sf::inc_beta_step_a({x, sa, sb}, ib);
    } else {
      partial += series::series_term(fixed_weight, ctx.inner_w->at(n), x, sa, sb);
    }
    ++n;
  }
  line.trunc_count = n;
  line.partial_sum = partial;
  line.residual_bound = fixed_weight * ctx.inner_tail->at(n);
  return line;
}

CdfReport clamped_report(Method method, double value) {
  CdfReport report;
  report.method = method;
  report.p_hat = value;
  return report;
}

CdfReport segmented_cdf(const series::DistParams& params,
                        const ErrorControls& controls, Method method,
                        BetaEval eval) {
  series::check_shape(params);
  check(controls);
  if (params.x <= 0.0) return clamped_report(method, 0.0);
  if (params.x >= 1.0) return clamped_report(method, 1.0);

  const double outer_delta =
      method == Method::div1 ? params.delta1 : params.delta2;
  const double inner_delta =
      method == Method::div1 ? params.delta2 : params.delta1;
  const Axis line_axis = method == Method::div1 ? Axis::row : Axis::column;

  CdfReport report;
  report.method = method;
  report.boundary = find_boundary(outer_delta, controls.eps_tail);
  report.control_line = static_cast<double>(report.boundary) *
                            controls.eps_line +
                        controls.eps_tail;

  WeightSeq outer_w(outer_delta);
  WeightSeq inner_w(inner_delta);
  TailSeq inner_tail(inner_delta);
  LineContext ctx{&params, line_axis, &inner_w, &inner_tail, eval};

  report.lines.reserve(report.boundary);
  double p = 0.0;
  double residual_total = 0.0;
  for (std::size_t o = 0; o < report.boundary; ++o) {
    LineDiagnostic line =
        adaptive_line(ctx, o, outer_w.at(o), controls.eps_line);
    p += line.partial_sum;
    residual_total += line.residual_bound;
    report.item_count += line.trunc_count;
    report.lines.push_back(std::move(line));
  }
  report.p_hat = std::min(p, 1.0);
  // Total bound: dropped-lines tail plus the per-line residual bounds;
  // algebraically equal to one minus the Poisson mass of region 0.
  report.upper_bound =
      series::poisson_tail(outer_delta, report.boundary) + residual_total;
  return report;
}

}  // namespace

std::string to_string(Method method) {
  return method == Method::div1 ? "div1" : "div2";
}

void check(const ErrorControls& controls) {
  if (!(controls.eps_line > 0.0) || !(controls.eps_tail > 0.0) ||
      !(controls.eps_line <= controls.eps_tail) ||
      !(controls.eps_tail <= 0.1)) {
    throw std::domain_error(
        "error controls require 0 < eps_line <= eps_tail <= 0.1");
  }
}

std::size_t find_boundary(double delta, double eps_tail) {
  if (!(eps_tail > 0.0)) {
    throw std::domain_error("find_boundary: eps_tail must be positive");
  }
  std::size_t k = 1;
  while (series::poisson_tail(delta, k) >= eps_tail) ++k;
  return k;
}

LineDiagnostic line_sum_adaptive(const series::DistParams& params,
                                 std::size_t fixed_index, Axis axis,
                                 double eps_line, BetaEval eval) {
  series::check_series(params);
  if (!(eps_line > 0.0)) {
    throw std::domain_error("line_sum_adaptive: eps_line must be positive");
  }
  const double fixed_delta = axis == Axis::row ? params.delta1 : params.delta2;
  const double inner_delta = axis == Axis::row ? params.delta2 : params.delta1;
  WeightSeq fixed_w(fixed_delta);
  WeightSeq inner_w(inner_delta);
  TailSeq inner_tail(inner_delta);
  LineContext ctx{&params, axis, &inner_w, &inner_tail, eval};
  return adaptive_line(ctx, fixed_index, fixed_w.at(fixed_index), eps_line);
}

CdfReport div1_cdf(const series::DistParams& params,
                   const ErrorControls& controls, BetaEval eval) {
  return segmented_cdf(params, controls, Method::div1, eval);
}

CdfReport div2_cdf(const series::DistParams& params,
                   const ErrorControls& controls, BetaEval eval) {
  return segmented_cdf(params, controls, Method::div2, eval);
}

CdfReport beta_cdf(const series::DistParams& params, Method method,
                   const ErrorControls& controls, BetaEval eval) {
  return segmented_cdf(params, controls, method, eval);
}

double f_to_x(double n1, double n2, double f) {
  if (f <= 0.0) return 0.0;
  const double scaled = n1 * f;
  if (std::isinf(scaled)) return 1.0;
  return scaled / (scaled + n2);
}

CdfReport f_cdf(double n1, double n2, double lambda1, double lambda2, double f,
                Method method, const ErrorControls& controls, BetaEval eval) {
  if (!std::isfinite(f)) {
    throw std::domain_error("f_cdf: evaluation point must be finite");
  }
  series::DistParams params =
      series::DistParams::from_degrees(n1, n2, lambda1, lambda2, 0.0);
  if (f <= 0.0) {
    series::check_shape(params);
    check(controls);
    return clamped_report(method, 0.0);
  }
  params.x = f_to_x(n1, n2, f);
  return beta_cdf(params, method, controls, eval);
}

}  // namespace dncbeta::divcdf
