// Copyright 2026 The stance-scope Authors.
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

#ifndef STANCE_SCOPE_STUDENT_T_HPP_
#define STANCE_SCOPE_STUDENT_T_HPP_

namespace stance_scope::stats {

// I_x(a, b) by the modified Lentz continued fraction, switching to the
// symmetric form for x > (a + 1) / (a + b + 2). Absolute error below 1e-13
// for the parameter ranges used by the t-test.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);
// Upper tail P(T > t). student_t_sf(t) + student_t_sf(-t) == 1 up to
// rounding of a single subtraction.
double student_t_sf(double t, double df);

double normal_cdf(double z);

}  // namespace stance_scope::stats

#endif  // STANCE_SCOPE_STUDENT_T_HPP_
