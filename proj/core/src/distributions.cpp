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

#include "pielou/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace pielou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double standard_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Upper tail Q(z) = 1 - Phi(z).
double standard_normal_survival(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double standard_normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double standard_normal_upper_quantile(double q) {
  return boost::math::quantile(
      boost::math::complement(boost::math::normal_distribution<double>(), q));
}

// Phi(hi) - Phi(lo), evaluated on the tail that keeps the most digits.
double normal_mass(double lo, double hi) {
  if (lo > 0.0) return standard_normal_survival(lo) - standard_normal_survival(hi);
  return standard_normal_cdf(hi) - standard_normal_cdf(lo);
}

// Uniform on the open interval (0, 1).
double open_unit(Rng& rng) {
  for (;;) {
    const double u = std::generate_canonical<double, 53>(rng);
    if (u > 0.0) return u;
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

Distribution::Distribution(Kind kind) : kind_(kind) {
  std::visit(Overloaded{
                 [](const Uniform& d) {
                   require(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi,
                           "uniform: requires finite lo < hi");
                 },
                 [this](const Beta& d) {
                   require(d.alpha > 0.0 && d.beta > 0.0 && std::isfinite(d.alpha) &&
                               std::isfinite(d.beta),
                           "beta: requires alpha > 0 and beta > 0");
                   normalizer_ = std::exp(std::lgamma(d.alpha) + std::lgamma(d.beta) -
                                          std::lgamma(d.alpha + d.beta));
                 },
                 [](const Gaussian& d) {
                   require(std::isfinite(d.mu) && d.sigma > 0.0 && std::isfinite(d.sigma),
                           "gaussian: requires finite mu and sigma > 0");
                 },
                 [this](const TruncatedGaussian& d) {
                   require(std::isfinite(d.mu) && d.sigma > 0.0 && std::isfinite(d.sigma),
                           "truncated_gaussian: requires finite mu and sigma > 0");
                   require(d.lo < d.hi, "truncated_gaussian: requires lo < hi");
                   normalizer_ = normal_mass((d.lo - d.mu) / d.sigma, (d.hi - d.mu) / d.sigma);
                   require(normalizer_ > 0.0,
                           "truncated_gaussian: [lo, hi] carries no probability mass");
                 },
             },
             kind_);
}

std::string Distribution::name() const {
  std::ostringstream out;
  out.precision(10);
  std::visit(Overloaded{
                 [&](const Uniform& d) { out << "Uniform(" << d.lo << ", " << d.hi << ")"; },
                 [&](const Beta& d) { out << "Beta(" << d.alpha << ", " << d.beta << ")"; },
                 [&](const Gaussian& d) { out << "Gaussian(" << d.mu << ", " << d.sigma << ")"; },
                 [&](const TruncatedGaussian& d) {
                   out << "TruncatedGaussian(" << d.mu << ", " << d.sigma << ", " << d.lo << ", "
                       << d.hi << ")";
                 },
             },
             kind_);
  return out.str();
}

double Distribution::pdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Uniform& d) { return (x < d.lo || x > d.hi) ? 0.0 : 1.0 / (d.hi - d.lo); },
          [x, this](const Beta& d) {
            if (x < 0.0 || x > 1.0) return 0.0;
            return std::pow(x, d.alpha - 1.0) * std::pow(1.0 - x, d.beta - 1.0) / normalizer_;
          },
          [x](const Gaussian& d) { return standard_normal_pdf((x - d.mu) / d.sigma) / d.sigma; },
          [x, this](const TruncatedGaussian& d) {
            if (x < d.lo || x > d.hi) return 0.0;
            return standard_normal_pdf((x - d.mu) / d.sigma) / (d.sigma * normalizer_);
          },
      },
      kind_);
}

double Distribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Uniform& d) { return std::clamp((x - d.lo) / (d.hi - d.lo), 0.0, 1.0); },
          [x](const Beta& d) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return boost::math::cdf(boost::math::beta_distribution<double>(d.alpha, d.beta), x);
          },
          [x](const Gaussian& d) { return standard_normal_cdf((x - d.mu) / d.sigma); },
          [x, this](const TruncatedGaussian& d) {
            if (x <= d.lo) return 0.0;
            if (x >= d.hi) return 1.0;
            const double lo = (d.lo - d.mu) / d.sigma;
            return std::clamp(normal_mass(lo, (x - d.mu) / d.sigma) / normalizer_, 0.0, 1.0);
          },
      },
      kind_);
}

double Distribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must lie in [0, 1]");
  const Interval s = support();
  if (p == 0.0) return s.lo;
  if (p == 1.0) return s.hi;
  return std::visit(
      Overloaded{
          [p](const Uniform& d) { return d.lo + p * (d.hi - d.lo); },
          [p](const Beta& d) {
            return boost::math::quantile(boost::math::beta_distribution<double>(d.alpha, d.beta),
                                         p);
          },
          [p](const Gaussian& d) { return d.mu + d.sigma * standard_normal_quantile(p); },
          [p, this](const TruncatedGaussian& d) {
            const double lo = (d.lo - d.mu) / d.sigma;
            double z = 0.0;
            if (lo > 0.0) {
              z = standard_normal_upper_quantile(standard_normal_survival(lo) -
                                                 p * normalizer_);
            } else {
              z = standard_normal_quantile(standard_normal_cdf(lo) + p * normalizer_);
            }
            return std::clamp(d.mu + d.sigma * z, d.lo, d.hi);
          },
      },
      kind_);
}

double Distribution::mean() const {
  return std::visit(
      Overloaded{
          [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
          [](const Beta& d) { return d.alpha / (d.alpha + d.beta); },
          [](const Gaussian& d) { return d.mu; },
          [this](const TruncatedGaussian& d) {
            const double lo = (d.lo - d.mu) / d.sigma;
            const double hi = (d.hi - d.mu) / d.sigma;
            return d.mu +
                   d.sigma * (standard_normal_pdf(lo) - standard_normal_pdf(hi)) / normalizer_;
          },
      },
      kind_);
}

double Distribution::sample(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&rng](const Uniform& d) { return d.lo + (d.hi - d.lo) * open_unit(rng); },
          [&rng](const Beta& d) {
            std::gamma_distribution<double> gx(d.alpha, 1.0);
            std::gamma_distribution<double> gy(d.beta, 1.0);
            const double x = gx(rng);
            const double y = gy(rng);
            return x / (x + y);
          },
          [&rng](const Gaussian& d) {
            std::normal_distribution<double> normal(d.mu, d.sigma);
            return normal(rng);
          },
          [&rng, this](const TruncatedGaussian&) { return quantile(open_unit(rng)); },
      },
      kind_);
}

Interval Distribution::support() const {
  return std::visit(Overloaded{
                        [](const Uniform& d) { return Interval{d.lo, d.hi}; },
                        [](const Beta&) { return Interval{0.0, 1.0}; },
                        [](const Gaussian&) { return Interval{-kInf, kInf}; },
                        [](const TruncatedGaussian& d) { return Interval{d.lo, d.hi}; },
                    },
                    kind_);
}

Interval Distribution::truncated_support(double k) const {
  return std::visit(Overloaded{
                        [](const Uniform& d) { return Interval{d.lo, d.hi}; },
                        [](const Beta&) { return Interval{0.0, 1.0}; },
                        [k](const Gaussian& d) {
                          return Interval{d.mu - k * d.sigma, d.mu + k * d.sigma};
                        },
                        [k](const TruncatedGaussian& d) {
                          return Interval{d.lo, d.hi}.intersect(
                              Interval{d.mu - k * d.sigma, d.mu + k * d.sigma});
                        },
                    },
                    kind_);
}

bool Distribution::is_truncated(double k) const {
  const Interval full = support();
  const Interval cut = truncated_support(k);
  return cut.lo > full.lo || cut.hi < full.hi;
}

double JointInputs::joint_density(double c, double a, double b) const {
  const double fc = c_dist.pdf(c);
  if (fc == 0.0) return 0.0;
  const double fa = a_dist.pdf(a);
  if (fa == 0.0) return 0.0;
  return fc * fa * b_dist.pdf(b);
}

double JointInputs::validity_mass() const {
  const auto above = [](const Distribution& d, double threshold) {
    if (const auto* g = std::get_if<Gaussian>(&d.kind())) {
      return standard_normal_survival((threshold - g->mu) / g->sigma);
    }
    return 1.0 - d.cdf(threshold);
  };
  return above(a_dist, 1.0) * above(b_dist, 0.0) * above(c_dist, 0.0);
}

JointLaw JointInputs::law(const QuadratureConfig& cfg) const {
  const double k = cfg.gaussian_truncation_k;
  SupportBox box{
      c_dist.truncated_support(k).intersect(Interval{0.0, kInf}),
      a_dist.truncated_support(k).intersect(Interval{1.0, kInf}),
      b_dist.truncated_support(k).intersect(Interval{0.0, kInf}),
  };
  JointInputs copy = *this;
  return JointLaw{
      [copy](double c, double a, double b) { return copy.joint_density(c, a, b); },
      box,
      [c = c_dist](double x) { return c.pdf(x); },
  };
}

SupportBox JointInputs::quantile_box(double eps) const {
  const auto cut = [eps](const Distribution& d) {
    return Interval{d.quantile(eps), d.quantile(1.0 - eps)};
  };
  return SupportBox{
      cut(c_dist).intersect(Interval{0.0, kInf}),
      cut(a_dist).intersect(Interval{1.0, kInf}),
      cut(b_dist).intersect(Interval{0.0, kInf}),
  };
}

}  // namespace pielou
