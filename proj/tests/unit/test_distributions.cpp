#include <doctest.h>

#include <cmath>
#include <random>

#include "agora/distributions.hpp"
#include "agora/errors.hpp"
#include "oracles/quadrature.hpp"

using namespace agora;

TEST_CASE("normal cdf symmetry and complement") {
  CHECK(normal_cdf(0.0).value == doctest::Approx(0.5).epsilon(1e-15));
  for (double x : {-3.0, -1.0, -0.25, 0.5, 1.7, 4.0}) {
    CHECK(normal_cdf(x).value + normal_sf(x).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(normal_cdf(x).value == doctest::Approx(oracle::normal_cdf(x)).epsilon(1e-12));
  }
}

TEST_CASE("chi-square survival matches tables and the quadrature oracle") {
  CHECK(chi2_sf(3.841, 1).value == doctest::Approx(0.0500).epsilon(0.02));
  CHECK(std::fabs(chi2_sf(3.841, 1).value - 0.05) < 1e-3);
  CHECK(chi2_sf(19.242, 1).value == doctest::Approx(1.1515189826848541e-05).epsilon(1e-8));

  std::mt19937_64 rng(101);
  for (double df : {1.0, 2.0, 5.0, 10.0, 50.0}) {
    for (int i = 0; i < 6; i++) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double x = 0.05 + u * (3.0 * df);
      const auto ours = chi2_sf(x, df);
      const double ref = oracle::chi2_sf(x, df);
      CHECK(std::fabs(ours.value - ref) < 1e-10);
      CHECK(ours.abs_error_bound <= 1e-10);
    }
  }
}

TEST_CASE("chi-square cdf/sf complement and monotonicity on a 1000-point grid") {
  for (double df : {1.0, 4.0, 30.0}) {
    double prev = -1.0;
    for (int i = 0; i < 1000; i++) {
      const double x = 0.01 + i * (5.0 * df) / 1000.0;
      const auto c = chi2_cdf(x, df);
      const auto s = chi2_sf(x, df);
      CHECK(std::fabs(c.value + s.value - 1.0) < 1e-12);
      CHECK(c.value >= prev - 1e-15);
      prev = c.value;
    }
  }
}

TEST_CASE("student t survival against the oracle and the normal limit") {
  CHECK(t_sf(2.5, 7).value == doctest::Approx(0.020496109292876437).epsilon(1e-10));
  for (double df : {1.0, 3.0, 12.0, 80.0}) {
    for (double x : {0.3, 1.1, 2.4, 5.0}) {
      CHECK(std::fabs(t_sf(x, df).value - oracle::t_sf(x, df)) < 1e-10);
      CHECK(std::fabs(t_cdf(x, df).value + t_sf(x, df).value - 1.0) < 1e-12);
      CHECK(std::fabs(t_sf(-x, df).value - (1.0 - t_sf(x, df).value)) < 1e-12);
    }
  }
  // Large-df limit approaches the normal.
  CHECK(std::fabs(t_sf(1.0, 10000).value - normal_sf(1.0).value) < 1e-4);
  CHECK(std::fabs(t_sf(2.0, 10000).value - normal_sf(2.0).value) < 1e-4);
}

TEST_CASE("F survival against the oracle") {
  CHECK(f_sf(8.64, 2, 6.0).value == doctest::Approx(0.017120041898905737).epsilon(1e-10));
  CHECK(f_sf(0.432, 6, 100).value == doctest::Approx(0.855992635450719).epsilon(1e-10));
  for (auto [d1, d2] : {std::pair{1.0, 4.0}, {2.0, 6.0}, {5.0, 40.0}, {10.0, 3.0}}) {
    for (double x : {0.4, 1.0, 2.5, 7.0}) {
      CHECK(std::fabs(f_sf(x, d1, d2).value - oracle::f_sf(x, d1, d2)) < 1e-10);
      CHECK(std::fabs(f_cdf(x, d1, d2).value + f_sf(x, d1, d2).value - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("noncentral F collapses to the central F at lambda zero") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; i++) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = 0.05 + 6.0 * u;
    const double d1 = 1.0 + (i % 7);
    const double d2 = 2.0 + (i % 23);
    CHECK(std::fabs(noncentral_f_cdf(x, d1, d2, 0.0).value - f_cdf(x, d1, d2).value) <
          1e-10);
  }
}

TEST_CASE("noncentral F matches reference values and the oracle") {
  CHECK(noncentral_f_cdf(2.0, 3, 20, 5.0).value ==
        doctest::Approx(0.40313008503458814).epsilon(1e-8));
  CHECK(noncentral_f_cdf(4.0, 1, 10, 12.0).value ==
        doctest::Approx(0.08345839820181168).epsilon(1e-8));
  CHECK(noncentral_f_cdf(0.8, 6, 40, 2.5).value ==
        doctest::Approx(0.23183492682259335).epsilon(1e-8));
  for (auto [x, d1, d2, lam] :
       {std::tuple{2.0, 3.0, 20.0, 5.0}, {1.2, 2.0, 12.0, 30.0}, {0.9, 4.0, 8.0, 1.0}}) {
    const auto ours = noncentral_f_cdf(x, d1, d2, lam);
    CHECK(std::fabs(ours.value - oracle::noncentral_f_cdf(x, d1, d2, lam)) < 1e-8);
    CHECK(ours.abs_error_bound <= 1e-8);
  }
  // Large noncentrality stays stable (power-analysis regime).
  const auto big = noncentral_f_cdf(1.0, 2, 1997, 399.3);
  CHECK(big.value >= 0.0);
  CHECK(big.value <= 1e-6);
}

TEST_CASE("studentized range survival and critical values") {
  CHECK(studentized_range_sf(3.88, 3, 10).value ==
        doctest::Approx(0.049813905771076916).epsilon(1e-6));
  CHECK(studentized_range_sf(3.0, 3, 10).value ==
        doctest::Approx(0.13498341518956258).epsilon(1e-6));
  CHECK(studentized_range_sf(2.0, 2, 5).value ==
        doctest::Approx(0.21643722926968534).epsilon(1e-6));
  CHECK(studentized_range_sf(4.5, 4, 20).value ==
        doctest::Approx(0.02233715793982416).epsilon(1e-6));
  // Fractional df, as Games-Howell produces.
  CHECK(studentized_range_sf(3.5, 3, 6.5).value ==
        doctest::Approx(0.10000237777823273).epsilon(1e-6));

  const double q_crit = studentized_range_quantile(0.95, 3, 10);
  CHECK(std::fabs(q_crit - 3.88) < 0.01);

  // Independent double-quadrature oracle at a spot check.
  CHECK(std::fabs(studentized_range_sf(3.0, 3, 10).value -
                  oracle::studentized_range_sf(3.0, 3, 10)) < 1e-7);

  const auto r = studentized_range_sf(3.1, 3, 12);
  CHECK(r.abs_error_bound <= 1e-8);
}

TEST_CASE("studentized range cdf is monotone and complements its sf") {
  double prev = -1.0;
  for (int i = 1; i <= 60; i++) {
    const double q = i * 0.15;
    const auto c = studentized_range_cdf(q, 3, 8.0);
    CHECK(std::fabs(c.value + studentized_range_sf(q, 3, 8.0).value - 1.0) < 1e-12);
    CHECK(c.value >= prev - 1e-12);
    prev = c.value;
  }
}

TEST_CASE("quantile kernels invert their forward kernels") {
  for (double p : {0.001, 0.025, 0.5, 0.975, 0.995}) {
    CHECK(std::fabs(normal_cdf(normal_quantile(p)).value - p) < 1e-12);
  }
  for (auto [p, d1, d2] : {std::tuple{0.95, 2.0, 10.0}, {0.99, 1.0, 40.0}}) {
    CHECK(std::fabs(f_cdf(f_quantile(p, d1, d2), d1, d2).value - p) < 1e-9);
  }
}

TEST_CASE("kernel domain errors carry NumericsError") {
  CHECK_THROWS_AS(chi2_sf(1.0, 0.0), NumericsError);
  CHECK_THROWS_AS(chi2_sf(std::nan(""), 1.0), NumericsError);
  CHECK_THROWS_AS(t_sf(1.0, -2.0), NumericsError);
  CHECK_THROWS_AS(f_sf(1.0, 0.0, 5.0), NumericsError);
  CHECK_THROWS_AS(noncentral_f_cdf(1.0, 2.0, 5.0, -1.0), NumericsError);
  CHECK_THROWS_AS(studentized_range_sf(2.0, 1, 10.0), NumericsError);
  CHECK_THROWS_AS(normal_quantile(0.0), NumericsError);
}
