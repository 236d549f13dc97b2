#include "bgrd/bounds.hpp"

#include <cmath>

namespace bgrd {

double gaussian_rd(double D, double sigma2) {
  if (!(D > 0.0)) throw std::domain_error("gaussian_rd: D must be > 0");
  if (!(sigma2 > 0.0)) throw std::domain_error("gaussian_rd: sigma2 must be > 0");
  if (D >= sigma2) return 0.0;
  return 0.5 * std::log2(sigma2 / D);
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binary_entropy: p must be in [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double binary_kl(double q, double p) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("binary_kl: q must be in [0,1]");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("binary_kl: p must be in (0,1)");
  double d = 0.0;
  if (q > 0.0) d += q * std::log2(q / p);  // explicit branch: 0*log 0 := 0
  if (q < 1.0) d += (1.0 - q) * std::log2((1.0 - q) / (1.0 - p));
  return d < 0.0 ? 0.0 : d;
}

std::pair<double, double> scale_reduce(const SourceModel& model, double D) {
  if (!(D > 0.0)) throw std::domain_error("scale_reduce: D must be > 0");
  return {model.p, D / model.sigma2};
}

double upper_bound_1(double D, double p) {
  SourceModel check(p, 1.0);
  return binary_entropy(p) + p * gaussian_rd(D, p);
}

double upper_bound_2(double D, double p) {
  SourceModel check(p, 1.0);
  return gaussian_rd(D, p);
}

double lower_bound_trivial(double D, double p) {
  SourceModel check(p, 1.0);
  return p * gaussian_rd(D, p);
}

double binomial_exponent(double u, double v, double p) {
  if (!(u >= 0.0 && v >= 0.0))
    throw std::domain_error("binomial_exponent: u, v must be >= 0");
  if (!(u + v > 0.0)) throw std::domain_error("binomial_exponent: u + v == 0");
  const double ratio = u / (u + v);
  if (ratio <= p) return 0.0;
  return (u + v) * binary_kl(ratio, p);
}

}  // namespace bgrd
