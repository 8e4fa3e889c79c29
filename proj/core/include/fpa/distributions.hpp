#pragma once

#include <memory>
#include <vector>

#include "fpa/bernstein.hpp"
#include "fpa/pchip.hpp"

namespace fpa {

// Private-value distribution on a bounded support.
class Distribution {
 public:
  virtual ~Distribution() = default;
  virtual double pdf(double v) const = 0;
  virtual double cdf(double v) const = 0;
  // Leftmost v with cdf(v) >= gamma.
  virtual double quantile(double gamma) const = 0;
  virtual double lower() const = 0;
  virtual double upper() const = 0;
};

// Distortion of the CDF argument: increasing, D(0) = 0, D(1) = 1 for proper
// members; eval/deriv are total on [0, 1].
class Distortion {
 public:
  virtual ~Distortion() = default;
  virtual double eval(double gamma) const = 0;
  virtual double deriv(double gamma) const = 0;
};

class UniformDistribution final : public Distribution {
 public:
  double pdf(double v) const override {
    return (v >= 0.0 && v <= 1.0) ? 1.0 : 0.0;
  }
  double cdf(double v) const override;
  double quantile(double gamma) const override;
  double lower() const override { return 0.0; }
  double upper() const override { return 1.0; }
};

// 0.2 * Uniform[0,1] + 0.8 * Beta(2,4); closed-form CDF, numeric quantile.
class MixtureDistribution final : public Distribution {
 public:
  double pdf(double v) const override;
  double cdf(double v) const override;
  double quantile(double gamma) const override;
  double lower() const override { return 0.0; }
  double upper() const override { return 1.0; }
};

class BpdDistribution final : public Distribution {
 public:
  explicit BpdDistribution(BpdParams params) : params_(std::move(params)) {}
  double pdf(double v) const override { return bpd_pdf(params_, v); }
  double cdf(double v) const override { return bpd_cdf(params_, v); }
  double quantile(double gamma) const override {
    return bpd_quantile(params_, gamma);
  }
  double lower() const override { return 0.0; }
  double upper() const override { return 1.0; }
  const BpdParams& params() const { return params_; }

 private:
  BpdParams params_;
};

// Distribution defined by its quantile function sampled on a gamma grid;
// in between, monotone interpolation in both directions.
class GridQuantileDistribution final : public Distribution {
 public:
  // gammas must start at 0, end at 1, strictly increasing; values strictly
  // increasing.
  GridQuantileDistribution(std::vector<double> gammas,
                           std::vector<double> values);
  double pdf(double v) const override;
  double cdf(double v) const override;
  double quantile(double gamma) const override;
  double lower() const override { return lo_; }
  double upper() const override { return hi_; }

 private:
  PchipCurve v_of_gamma_;
  PchipCurve gamma_of_v_;
  double lo_ = 0.0, hi_ = 1.0;
};

class IdentityDistortion final : public Distortion {
 public:
  double eval(double gamma) const override { return gamma; }
  double deriv(double) const override { return 1.0; }
};

// D(g) = (exp(c g) - 1) / (exp(c) - 1), c != 0.
class ExpDistortion final : public Distortion {
 public:
  explicit ExpDistortion(double c);
  double eval(double gamma) const override;
  double deriv(double gamma) const override;
  double rate() const { return c_; }

 private:
  double c_;
  double denom_;
};

class BpdDistortion final : public Distortion {
 public:
  explicit BpdDistortion(DistortionParams params) : params_(std::move(params)) {}
  double eval(double gamma) const override { return d_eval(params_, gamma); }
  double deriv(double gamma) const override { return d_deriv(params_, gamma); }
  const DistortionParams& params() const { return params_; }

 private:
  DistortionParams params_;
};

// Distortion sampled on a grid (recovered numerically); monotone interpolant.
class GridDistortion final : public Distortion {
 public:
  GridDistortion(std::vector<double> gammas, std::vector<double> values);
  double eval(double gamma) const override { return curve_.eval(gamma); }
  double deriv(double gamma) const override { return curve_.deriv(gamma); }

 private:
  PchipCurve curve_;
};

// Solves cdf(v) = gamma by bisection refined with Newton steps; used by the
// numeric quantile implementations.
double invert_cdf(const Distribution& dist, double gamma);

}  // namespace fpa
