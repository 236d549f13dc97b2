#pragma once

#include <functional>
#include <limits>
#include <stdexcept>

namespace bgrd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval on the extended real line; endpoints may be +-infinity.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval whole_line() { return Interval(-kInf, kInf); }
};

// Density of N(0,1).
double std_normal_pdf(double s);

// Pr(N(0,1) > a), evaluated through erfc so the far tail keeps full
// relative accuracy.
double std_normal_sf(double a);

// Pr(N(0,1) <= a).
double std_normal_cdf(double a);

// Pr(|N(0,1)| > U) for U >= 0.
double tail_prob(double U);

// Quantile function of N(0,1) (Wichura's AS 241, double precision branch).
double inverse_normal_cdf(double u);

// Integral of s^l * pdf(s) over iv, l in {0,1,2}, in closed form.
double truncated_moment(int l, Interval iv);

// Integral of (s-L)^2 * pdf(s) over [L, U], 0 <= L <= U.
double shifted_square_integral(double L, double U);

// Adaptive-Simpson integral of f over iv with absolute error <= tol.
// Infinite endpoints are truncated at |s| = 40. Throws std::runtime_error
// if the subdivision cap is reached before the tolerance is met.
double quadrature_oracle(const std::function<double(double)>& f, Interval iv,
                         double tol, int max_depth = 60);

}  // namespace bgrd
