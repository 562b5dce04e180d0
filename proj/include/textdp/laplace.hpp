// Copyright 2026 The textdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEXTDP_LAPLACE_HPP_
#define TEXTDP_LAPLACE_HPP_

#include <cstddef>

#include "textdp/embedding.hpp"
#include "textdp/rng.hpp"

namespace textdp {

// Privacy parameter epsilon, in units of inverse Euclidean distance in
// embedding space.
struct PrivacyParameter {
  double epsilon;

  explicit PrivacyParameter(double eps);
};

// An n-dimensional Laplace perturbation decomposed as radius x direction.
// The density of offset is proportional to exp(-epsilon * ||offset||_2):
// radius ~ Gamma(n, 1/epsilon), direction uniform on the unit (n-1)-sphere.
struct NoiseSample {
  WordVector direction;  // unit norm
  double radius = 0.0;
  WordVector offset;  // radius * direction
};

// Uniform point on the unit (n-1)-sphere: n independent standard Gaussians,
// normalized. Degenerate draws (norm below 1e-12) are resampled so the
// division is always safe. For n = 1 this yields +1 or -1 with equal
// probability.
WordVector sample_unit_sphere(std::size_t n, Rng& rng);

// Radius draw: Gamma with shape n and scale 1/epsilon.
double sample_radius(std::size_t n, const PrivacyParameter& eps, Rng& rng);

// Full decomposed draw at dimension n.
NoiseSample draw_noise(std::size_t n, const PrivacyParameter& eps, Rng& rng);

// x plus an n-dimensional Laplace perturbation, n = x.size().
WordVector sample_noise(const WordVector& x, const PrivacyParameter& eps,
                        Rng& rng);

// log of the unnormalized density: -epsilon * d2(x, z). Only meaningful in
// ratios, where the normalization constant cancels.
double log_density_unnormalized(const WordVector& x, const WordVector& z,
                                const PrivacyParameter& eps);

}  // namespace textdp

#endif  // TEXTDP_LAPLACE_HPP_
