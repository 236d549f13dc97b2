#pragma once

#include <stdexcept>
#include <utility>

namespace bgrd {

// Bernoulli-Gaussian source: an independent Bernoulli(p) gate times an
// N(0, sigma2) value.
struct SourceModel {
  double p;
  double sigma2;

  SourceModel(double p_, double sigma2_) : p(p_), sigma2(sigma2_) {
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("SourceModel: p must be in (0,1)");
    if (!(sigma2 > 0.0))
      throw std::invalid_argument("SourceModel: sigma2 must be > 0");
  }
};

// Rate-distortion function of N(0, sigma2) under squared error, in bits.
double gaussian_rd(double D, double sigma2);

// Binary entropy in bits.
double binary_entropy(double p);

// Binary KL divergence D(q || p) in bits; requires p in (0,1).
double binary_kl(double q, double p);

// Normalize (model, D) to the unit-variance source: returns (p, D / sigma2).
std::pair<double, double> scale_reduce(const SourceModel& model, double D);

// H(p) + p * R(D/p, N(0,1)): support described losslessly, values by an
// ideal Gaussian coder.
double upper_bound_1(double D, double p);

// R(D, N(0,p)): the Gaussian source of matched variance is harder.
double upper_bound_2(double D, double p);

// p * R(D, N(0,p)): the known simple lower bound.
double lower_bound_trivial(double D, double p);

// (u+v) * D(u/(u+v) || p) when u/(u+v) > p, else 0. Accepts real u, v >= 0
// with u+v > 0 (the optimizer works on the continuum relaxation).
double binomial_exponent(double u, double v, double p);

}  // namespace bgrd
