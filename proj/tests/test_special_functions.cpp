#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgrd/rng.hpp"
#include "bgrd/special_functions.hpp"

using namespace bgrd;

TEST_CASE("normal pdf, cdf and survival at known points") {
  CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
  // far tail keeps relative accuracy: Pr(N > 8) via erfc
  CHECK(std_normal_sf(8.0) ==
        doctest::Approx(6.220960574271786e-16).epsilon(1e-12));
  CHECK(std_normal_cdf(3.0) + std_normal_sf(3.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tail_prob") {
  CHECK(tail_prob(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tail_prob(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK_THROWS_AS(tail_prob(-0.1), std::domain_error);
}

TEST_CASE("inverse normal cdf against known quantiles") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(inverse_normal_cdf(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(inverse_normal_cdf(0.99) ==
        doctest::Approx(2.3263478740408408).epsilon(1e-13));
  CHECK(inverse_normal_cdf(0.0013498980316300945) ==
        doctest::Approx(-3.0).epsilon(1e-12));

  // round trip over a grid including deep tails
  for (double u = 1e-12; u < 1.0; u = u < 0.1 ? u * 10.0 : u + 0.1) {
    CHECK(std_normal_cdf(inverse_normal_cdf(u)) == doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(Interval(1.0, 0.5), std::invalid_argument);
  CHECK_NOTHROW(Interval(-kInf, kInf));
}

TEST_CASE("closed-form truncated moments match the quadrature oracle") {
  CounterRng rng(42, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = 8.0 * (rng.next_uniform() - 0.5);
    double b = 8.0 * (rng.next_uniform() - 0.5);
    if (a > b) std::swap(a, b);
    const int pick = trial % 5;
    const Interval iv = pick == 3   ? Interval(a, kInf)
                        : pick == 4 ? Interval(-kInf, b)
                                    : Interval(a, b);
    const int l = trial % 3;
    const double closed = truncated_moment(l, iv);
    const double quad = quadrature_oracle(
        [l](double s) {
          const double w = std_normal_pdf(s);
          return l == 0 ? w : (l == 1 ? s * w : s * s * w);
        },
        iv, 1e-12);
    CHECK(std::abs(closed - quad) < 1e-10);
  }
}

TEST_CASE("truncated moment identities") {
  CHECK(truncated_moment(0, Interval::whole_line()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(truncated_moment(1, Interval::whole_line()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(truncated_moment(2, Interval::whole_line()) == doctest::Approx(1.0).epsilon(1e-14));
  // symmetry of the even moments
  CHECK(truncated_moment(2, Interval(0.5, 2.0)) ==
        doctest::Approx(truncated_moment(2, Interval(-2.0, -0.5))).epsilon(1e-13));
}

TEST_CASE("shifted square integral against quadrature") {
  const double cases[][2] = {{0.0, 1.0}, {0.3, 2.5}, {1.0, 1.0}, {0.5, kInf}, {2.0, 6.0}};
  for (const auto& c : cases) {
    const double L = c[0], U = c[1];
    const double closed = shifted_square_integral(L, U);
    const double quad = quadrature_oracle(
        [L](double s) { return (s - L) * (s - L) * std_normal_pdf(s); },
        Interval(L, U), 1e-12);
    CHECK(std::abs(closed - quad) < 1e-10);
  }
  CHECK(shifted_square_integral(1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("quadrature oracle throws when the subdivision cap is hit") {
  // sqrt kink at 0 cannot meet 1e-14 within 2 levels of subdivision
  auto kink = [](double s) { return std::sqrt(std::abs(s)); };
  CHECK_THROWS_AS(quadrature_oracle(kink, Interval(0.0, 1.0), 1e-14, 2),
                  std::runtime_error);
}
