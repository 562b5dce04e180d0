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

#include "textdp/laplace.hpp"

#include <cmath>
#include <random>

#include "textdp/error.hpp"

namespace textdp {

PrivacyParameter::PrivacyParameter(double eps) : epsilon(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("epsilon must be positive and finite");
  }
}

WordVector sample_unit_sphere(std::size_t n, Rng& rng) {
  if (n == 0) {
    throw ValidationError("sphere dimension must be at least 1");
  }
  WordVector v(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = gauss(rng);
      norm_sq += v[i] * v[i];
    }
    const double norm = std::sqrt(norm_sq);
    if (norm >= 1e-12) {
      for (auto& c : v) c /= norm;
      return v;
    }
    // astronomically unlikely; resample rather than divide by ~0
  }
}

double sample_radius(std::size_t n, const PrivacyParameter& eps, Rng& rng) {
  if (n == 0) {
    throw ValidationError("radius dimension must be at least 1");
  }
  std::gamma_distribution<double> gamma(static_cast<double>(n),
                                        1.0 / eps.epsilon);
  return gamma(rng);
}

NoiseSample draw_noise(std::size_t n, const PrivacyParameter& eps, Rng& rng) {
  NoiseSample s;
  s.radius = sample_radius(n, eps, rng);
  s.direction = sample_unit_sphere(n, rng);
  s.offset.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.offset[i] = s.radius * s.direction[i];
  }
  return s;
}

WordVector sample_noise(const WordVector& x, const PrivacyParameter& eps,
                        Rng& rng) {
  for (double c : x) {
    if (!std::isfinite(c)) {
      throw ValidationError("sample_noise: input vector must be finite");
    }
  }
  const NoiseSample s = draw_noise(x.size(), eps, rng);
  WordVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = x[i] + s.offset[i];
  }
  return z;
}

double log_density_unnormalized(const WordVector& x, const WordVector& z,
                                const PrivacyParameter& eps) {
  return -eps.epsilon * euclidean_distance(x, z);
}

}  // namespace textdp
