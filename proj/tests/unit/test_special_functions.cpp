#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bessel_oracle.hpp"
#include "casimir/errors.hpp"
#include "casimir/special_functions.hpp"
#include "racah_3j.hpp"

using namespace casimir;
using namespace casimir::special;

namespace {

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

double ln_rel(double ln_a, const oracle::hp& b) {
  return std::fabs(std::expm1(ln_a - static_cast<double>(log(b))));
}

// A value stored as its logarithm cannot be resolved more finely than a few
// ulps of that logarithm.
double ln_tol(double ln_a) { return 1e-12 + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(ln_a); }

}  // namespace

TEST_CASE("half-order Bessel closed forms") {
  CHECK(rel(bessel_i_half(0, 1.0).value(), std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0)) < 1e-14);
  CHECK(rel(bessel_k_half(0, 1.0).value(), std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0)) < 1e-14);
  CHECK(rel(bessel_k_half(1, 1.0).value(), 0.922137) < 1e-6);
  const double ip = std::sqrt(2.0 / std::numbers::pi) * (std::cosh(1.0) - 0.5 * std::sinh(1.0));
  CHECK(rel(bessel_i_half_prime(0, 1.0).value(), ip) < 1e-14);

  const double x = 0.7;
  const double kp = -std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x) * (1 + 1 / (2 * x));
  const auto kp_num = bessel_k_half_prime(0, x);
  CHECK(kp_num.sign == -1);
  CHECK(rel(kp_num.value(), kp) < 1e-14);

  // I_{1/2}(x) ~ sqrt(2x/pi)
  const auto tiny = bessel_i_half(0, 1e-10);
  CHECK(std::fabs(tiny.ln_abs - 0.5 * std::log(2e-10 / std::numbers::pi)) < 1e-12);
}

TEST_CASE("half-order Bessel against high-precision oracle") {
  const int orders[] = {0, 1, 2, 5, 17, 60, 150, 400};
  const double args[] = {1e-6, 1e-3, 0.1, 1.0, 3.7, 10.0, 55.0, 300.0};
  for (double x : args) {
    const auto t = half_order_bessel(400, x);
    for (int l : orders) {
      const oracle::hp hx(x);
      CAPTURE(l);
      CAPTURE(x);
      CHECK(ln_rel(t.ln_i[l], oracle::bessel_i(l, hx)) < ln_tol(t.ln_i[l]));
      CHECK(ln_rel(t.ln_k[l], oracle::bessel_k(l, hx)) < ln_tol(t.ln_k[l]));
    }
  }
}

TEST_CASE("Bessel derivatives against oracle") {
  for (double x : {0.05, 1.0, 8.0, 40.0}) {
    for (int l : {0, 3, 30}) {
      const oracle::hp hx(x);
      CAPTURE(l);
      CAPTURE(x);
      CHECK(ln_rel(bessel_i_half_prime(l, x).ln_abs, oracle::bessel_i_prime(l, hx)) < 1e-12);
      CHECK(ln_rel(bessel_k_half_prime(l, x).ln_abs, -oracle::bessel_k_prime(l, hx)) < 1e-12);
    }
  }
}

TEST_CASE("Wronskian") {
  // x (I K' - I' K) = -1, formed from the scaled table: the e^{+-x} factors
  // cancel exactly and only the O(l ln l) scaled logs enter.
  for (double x : {1e-6, 1e-4, 0.01, 0.5, 2.0, 10.0, 100.0, 1000.0, 1e5}) {
    const auto t = half_order_bessel(2000, x);
    for (int l : {0, 1, 7, 50, 300, 1000, 2000}) {
      const double ln_ik = t.ln_i_scaled[l] + t.ln_k_scaled[l];
      const double w = std::exp(ln_ik) * (t.x_log_derivative_k(l) - t.x_log_derivative_i(l));
      CAPTURE(l);
      CAPTURE(x);
      CHECK(std::fabs(w + 1.0) < 1e-11);
    }
  }
  // Same identity through the single-value LogScaled API.
  for (double x : {1e-4, 0.01, 0.5, 2.0, 10.0, 100.0}) {
    for (int l : {0, 1, 7, 50, 300}) {
      const auto i = bessel_i_half(l, x);
      const auto k = bessel_k_half(l, x);
      const auto ip = bessel_i_half_prime(l, x);
      const auto kp = bessel_k_half_prime(l, x);
      const auto w = (i * kp - ip * k) * LogScaled::from_double(x);
      CAPTURE(l);
      CAPTURE(x);
      CHECK(w.sign == -1);
      CHECK(std::fabs(std::expm1(w.ln_abs)) < 1e-11);
    }
  }
}

TEST_CASE("recurrences") {
  for (double x : {0.3, 10.0, 250.0}) {
    const auto t = half_order_bessel(600, x);
    for (int l : {1, 10, 100, 599}) {
      const double nu = l + 0.5;
      const auto lhs_i = LogScaled::from_log(t.ln_i[l - 1]) - LogScaled::from_log(t.ln_i[l + 1]);
      const auto rhs_i = LogScaled::from_log(t.ln_i[l] + std::log(2 * nu / x));
      const auto lhs_k = LogScaled::from_log(t.ln_k[l - 1]) - LogScaled::from_log(t.ln_k[l + 1]);
      const auto rhs_k = LogScaled::from_log(t.ln_k[l] + std::log(2 * nu / x), -1);
      CAPTURE(l);
      CAPTURE(x);
      CHECK(relative_difference(lhs_i, rhs_i) < 1e-11);
      CHECK(relative_difference(lhs_k, rhs_k) < 1e-11);
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_i_half(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k_half(2, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_i_half_prime(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k_half_prime(0, 0.0), DomainError);
}

TEST_CASE("LogScaled") {
  const auto a = LogScaled::from_double(-3.0);
  const auto b = LogScaled::from_double(2.0);
  CHECK((a * b).value() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK((a + b).value() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK((b - b).is_zero());
  CHECK(LogScaled::zero().value() == 0.0);
  CHECK_THROWS_AS(LogScaled::from_log(800.0).value(), std::overflow_error);
}

TEST_CASE("3j closed values") {
  CHECK(wigner3j_zero(1, 1, 1) == 0.0);
  CHECK(wigner3j_zero(1, 1, 2) == doctest::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-14));
  CHECK(wigner3j_zero(5, 3, 1) == 0.0);
  CHECK(wigner3j_m(1, 1, 2, 1) == doctest::Approx(1.0 / std::sqrt(30.0)).epsilon(1e-14));
  CHECK(wigner3j_m(2, 1, 1, 3) == 0.0);
  for (int l : {0, 1, 4, 13, 100}) {
    for (int m : {0, 1, l / 2, l}) {
      if (m > l) continue;
      const double expect = (((l - m) % 2 == 0) ? 1.0 : -1.0) / std::sqrt(2.0 * l + 1.0);
      CHECK(wigner3j_m(l, l, 0, m) == doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("3j against exact Racah formula, l <= 40") {
  std::vector<double> row;
  double worst = 0.0;
  for (int l1 = 0; l1 <= 40; l1 += 3) {
    for (int l2 = 0; l2 <= 40; l2 += 4) {
      for (int m : {0, 1, 2, 5, 11, 17, 40}) {
        if (m > std::min(l1, l2)) continue;
        wigner3j_m_range(l1, l2, m, row);
        for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3) {
          const double exact = oracle::wigner3j(l1, l2, l3, m, -m, 0);
          const double got = row[static_cast<std::size_t>(l3 - std::abs(l1 - l2))];
          worst = std::max(worst, std::fabs(got - exact));
        }
      }
    }
  }
  // absolute error scale: |3j| <= 1/sqrt(2 l3 + 1)
  CHECK(worst < 1e-12);
}

TEST_CASE("3j orthogonality and symmetry") {
  std::vector<double> row;
  for (int l1 : {0, 7, 50, 123, 200}) {
    for (int l2 : {3, 50, 199, 200}) {
      for (int m : {0, 1, 3, 49, 200}) {
        if (m > std::min(l1, l2)) continue;
        wigner3j_m_range(l1, l2, m, row);
        double s = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
          const int l3 = std::abs(l1 - l2) + static_cast<int>(k);
          s += (2.0 * l3 + 1.0) * row[k] * row[k];
          const double sym = (((l1 + l2 + l3) % 2 == 0) ? 1.0 : -1.0) * wigner3j_m(l2, l1, l3, -m);
          CHECK(std::fabs(row[k] - sym) < 1e-12);
        }
        CHECK(std::fabs(s - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("3j parity is exact") {
  for (int l1 = 0; l1 < 30; ++l1)
    for (int l2 = 0; l2 < 30; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3)
        if ((l1 + l2 + l3) % 2) CHECK(wigner3j_zero(l1, l2, l3) == 0.0);
}

TEST_CASE("3j at large l") {
  std::vector<double> row;
  wigner3j_m_range(1500, 2000, 700, row);
  double s = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) s += (2.0 * (500 + static_cast<double>(k)) + 1.0) * row[k] * row[k];
  CHECK(std::fabs(s - 1.0) < 1e-9);
  wigner3j_m_range(2000, 2000, 0, row);
  CHECK(row[0] == doctest::Approx(1.0 / std::sqrt(4001.0)).epsilon(1e-10));
}

TEST_CASE("Debye expansion") {
  CHECK(debye_validate(100, 50.0) < 1e-4);
  CHECK(debye_validate(20, 20.0) < 1e-2);
  CHECK(DebyeCoefficients::eta(2.0) > DebyeCoefficients::eta(1.0));
  CHECK(DebyeCoefficients::u1(1e8) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(DebyeCoefficients::u1(0.0) == doctest::Approx(-1.0 / 12.0));
}
