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

#ifndef DNCBETA_SPECIAL_FUNCTIONS_HPP
#define DNCBETA_SPECIAL_FUNCTIONS_HPP

namespace dncbeta::sf {

/// Arguments of the regularized incomplete beta function I_x(a, b).
struct BetaArgs {
  double x;  // integration limit, in [0, 1]
  double a;  // first shape, > 0
  double b;  // second shape, > 0
};

/// ln Gamma(z) for z > 0.  Throws std::domain_error otherwise.
double log_gamma(double z);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b), evaluated with a
/// modified Lentz continued fraction.  The symmetry
/// I_x(a, b) = 1 - I_{1-x}(b, a) is applied when x > (a+1)/(a+b+2).
/// Throws std::domain_error if x is outside [0, 1] or a, b are not
/// positive.
double reg_inc_beta(const BetaArgs& args);

/// Selects which shape parameter of reg_inc_beta_even must be a
/// positive integer.
enum class EvenShape { first, second };

/// I_x(a, b) by the finite binomial-tail sums available when a
/// (EvenShape::first) or b (EvenShape::second) is a positive integer.
/// The other shape may be any positive real.
double reg_inc_beta_even(const BetaArgs& args, EvenShape which_even);

/// I_x(a, b) by the finite arcsine-series form available when both a
/// and b are half-odd integers (a - 0.5 and b - 0.5 nonnegative
/// integers).
double reg_inc_beta_odd(const BetaArgs& args);

/// One ascending recurrence step in the first shape:
/// given i_ab = I_x(a, b), returns
///   I_x(a+1, b) = I_x(a, b) - Gamma(a+b)/(Gamma(a+1)Gamma(b)) x^a (1-x)^b
/// (Abramowitz & Stegun 26.5.16, rearranged).
double inc_beta_step_a(const BetaArgs& args, double i_ab);

/// One ascending recurrence step in the second shape:
/// given i_ab = I_x(a, b), returns
///   I_x(a, b+1) = I_x(a, b) + Gamma(a+b)/(Gamma(a)Gamma(b+1)) x^a (1-x)^b.
double inc_beta_step_b(const BetaArgs& args, double i_ab);

}  // namespace dncbeta::sf

#endif  // DNCBETA_SPECIAL_FUNCTIONS_HPP
