// Copyright 2026 The pielou Authors.
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

#pragma once

#include <functional>
#include <random>
#include <string>
#include <variant>

#include "pielou/numerics.hpp"

namespace pielou {

using Rng = std::mt19937_64;

struct Uniform {
  double lo;
  double hi;
};

struct Beta {
  double alpha;
  double beta;
};

/// sigma is a standard deviation.
struct Gaussian {
  double mu;
  double sigma;
};

/// Gaussian(mu, sigma) conditioned on [lo, hi].
struct TruncatedGaussian {
  double mu;
  double sigma;
  double lo;
  double hi;
};

/// A univariate absolutely continuous law. Parameters are validated on
/// construction; evaluation never throws.
class Distribution {
 public:
  using Kind = std::variant<Uniform, Beta, Gaussian, TruncatedGaussian>;

  explicit Distribution(Kind kind);

  static Distribution uniform(double lo, double hi) { return Distribution(Uniform{lo, hi}); }
  static Distribution beta(double alpha, double beta) {
    return Distribution(Beta{alpha, beta});
  }
  static Distribution gaussian(double mu, double sigma) {
    return Distribution(Gaussian{mu, sigma});
  }
  static Distribution truncated_gaussian(double mu, double sigma, double lo, double hi) {
    return Distribution(TruncatedGaussian{mu, sigma, lo, hi});
  }

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] std::string name() const;

  [[nodiscard]] double pdf(double x) const;
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double quantile(double p) const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double sample(Rng& rng) const;

  /// Mathematical support; infinite endpoints for the Gaussian.
  [[nodiscard]] Interval support() const;
  /// Support used for quadrature: Gaussian tails are cut at mu +- k sigma.
  [[nodiscard]] Interval truncated_support(double k) const;
  /// True when truncated_support(k) is narrower than support().
  [[nodiscard]] bool is_truncated(double k) const;

 private:
  Kind kind_;
  // Beta function B(alpha, beta) for Beta; Phi(hi') - Phi(lo') for the
  // truncated Gaussian; unused otherwise.
  double normalizer_ = 1.0;
};

/// Box containing the support of a joint law, one interval per coordinate.
struct SupportBox {
  Interval c;
  Interval a;
  Interval b;
};

/// A joint density of (C, A, B) together with a box that contains its
/// support. This is all the transformation engine needs; independence is
/// not assumed.
struct JointLaw {
  std::function<double(double c, double a, double b)> density;
  SupportBox support;
  /// Marginal density of C when known in closed form; used at period zero.
  std::function<double(double)> c_marginal;
};

/// The input vector (C, A, B) as a product of independent marginals.
struct JointInputs {
  Distribution c_dist;
  Distribution a_dist;
  Distribution b_dist;

  [[nodiscard]] double joint_density(double c, double a, double b) const;

  /// P[A > 1, B > 0, C > 0] from the marginal CDFs.
  [[nodiscard]] double validity_mass() const;

  /// Joint law whose support box is the Gaussian-truncated supports
  /// intersected with the model's positivity constraints.
  [[nodiscard]] JointLaw law(const QuadratureConfig& cfg) const;

  /// Box obtained by cutting every marginal at its eps and 1 - eps quantiles
  /// and applying the positivity constraints. Used to bound plotting ranges.
  [[nodiscard]] SupportBox quantile_box(double eps) const;
};

/// Standard normal CDF, accurate in both tails.
double standard_normal_cdf(double z);

}  // namespace pielou
