#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/specfun.hpp"
#include "backflow/verify/oracles.hpp"

using namespace backflow;
using specfun::Complex;

TEST_CASE("fresnel against quadrature") {
  for (double u : {0.0, 0.3, 1.0, 1.99, 2.0, 2.01, 3.5, 7.0, 15.0}) {
    CAPTURE(u);
    CHECK(specfun::fresnel_c(u) == doctest::Approx(verify::fresnel_c_quadrature(u)).epsilon(1e-12));
    CHECK(specfun::fresnel_s(u) == doctest::Approx(verify::fresnel_s_quadrature(u)).epsilon(1e-12));
  }
  // u = 1: tabulated through the quadrature oracle
  CHECK(std::fabs(specfun::fresnel_c(1.0) - verify::fresnel_c_quadrature(1.0)) < 1e-13);
}

TEST_CASE("fresnel limits and tail") {
  CHECK(specfun::fresnel_c(1e9) == 0.5);
  CHECK(specfun::fresnel_s(1e9) == 0.5);
  CHECK(specfun::fresnel_c(60.0) == doctest::Approx(0.5).epsilon(1e-2));
  // the two representations agree across the seam
  for (double u : {1.5, 2.0, 2.5, 10.0}) {
    const Complex E = specfun::fresnel_tail(u);
    const double k = std::sqrt(2.0 / std::numbers::pi);
    CHECK(k * E.real() == doctest::Approx(0.5 - specfun::fresnel_c(u)).epsilon(1e-10));
    CHECK(k * E.imag() == doctest::Approx(0.5 - specfun::fresnel_s(u)).epsilon(1e-10));
  }
  // tail decays like 1/(2u)
  CHECK(std::abs(specfun::fresnel_tail(100.0)) == doctest::Approx(1.0 / 200.0).epsilon(1e-3));
}

TEST_CASE("erfc on the real axis") {
  for (double x : {-4.0, -1.3, -0.2, 0.0, 0.1, 0.9, 2.5, 3.0, 4.5, 9.0}) {
    CAPTURE(x);
    const double ref = verify::erfc_series(x);
    CHECK(specfun::erfc_complex(Complex(x, 0.0)).real() == doctest::Approx(ref).epsilon(1e-12));
    CHECK(std::fabs(specfun::erfc_complex(Complex(x, 0.0)).imag()) < 1e-15);
    CHECK(ref == doctest::Approx(std::erfc(x)).epsilon(1e-13));
  }
}

TEST_CASE("erfc identities") {
  for (Complex z : {Complex(0.3, 0.7), Complex(-1.2, 0.4), Complex(2.0, -3.0), Complex(0.05, 5.0)}) {
    CAPTURE(z);
    const Complex a = specfun::erfc_complex(z);
    const Complex b = specfun::erfc_complex(-z);
    CHECK(std::abs(a + b - 2.0) < 1e-12 * std::max(1.0, std::abs(a)));
    const Complex c = specfun::erfc_complex(std::conj(z));
    CHECK(std::abs(c - std::conj(a)) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("faddeeva and erfcx") {
  // w(iy) = erfcx(y) for real y
  for (double y : {0.0, 0.5, 3.0, 9.0})
    CHECK(specfun::faddeeva_w(Complex(0.0, y)).real() == doctest::Approx(std::exp(y * y) * std::erfc(y)).epsilon(1e-12));
  // erfcx(y) ~ (1 - 1/(2y^2) + 3/(4y^4)) / (y sqrt(pi))
  const double y = 300.0;
  CHECK(specfun::erfcx_complex(y).real() ==
        doctest::Approx((1.0 - 0.5 / (y * y) + 0.75 / std::pow(y, 4)) / (y * std::sqrt(std::numbers::pi))).epsilon(1e-12));
  CHECK(std::abs(specfun::faddeeva_w(0.0) - 1.0) < 1e-15);
  // large |z|: w ~ i / (sqrt(pi) z)
  const Complex z(200.0, 150.0);
  CHECK(std::abs(specfun::faddeeva_w(z) * z * std::sqrt(std::numbers::pi) - Complex(0.0, 1.0)) < 1e-4);
  const Complex e = specfun::erfcx_complex(Complex(0.7, -0.2));
  CHECK(std::abs(e - std::exp(Complex(0.7, -0.2) * Complex(0.7, -0.2)) * specfun::erfc_complex(Complex(0.7, -0.2))) <
        1e-13);
  CHECK_THROWS_AS(specfun::faddeeva_w(Complex(0.0, -40.0)), NumericError);
}

TEST_CASE("principal branches") {
  CHECK(std::abs(specfun::sqrt_principal(Complex(-4.0, 1e-300)) - Complex(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(specfun::sqrt_principal(Complex(-4.0, -1e-300)) - Complex(0.0, -2.0)) < 1e-15);
  CHECK_THROWS_AS(specfun::sqrt_principal(Complex(-4.0, 0.0)), DomainError);
  // arctan from its logarithmic form
  for (Complex z : {Complex(0.3, 0.2), Complex(2.0, -0.5), Complex(-1.5, 3.0)}) {
    const Complex i(0.0, 1.0);
    const Complex ref = 0.5 * i * (std::log(1.0 - i * z) - std::log(1.0 + i * z));
    CHECK(std::abs(specfun::arctan_complex(z) - ref) < 1e-13);
    const Complex refh = 0.5 * (std::log(1.0 + z) - std::log(1.0 - z));
    CHECK(std::abs(specfun::arctanh_complex(z) - refh) < 1e-13);
  }
  CHECK_THROWS_AS(specfun::arctan_complex(Complex(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(specfun::arctanh_complex(Complex(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(specfun::arctanh_complex(Complex(2.0, 0.0)), DomainError);
  CHECK_NOTHROW(specfun::arctanh_complex(Complex(2.0, 1e-7)));
}
