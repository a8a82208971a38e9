#include <numbers>

#include "helpers.hpp"

using namespace testing;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

std::vector<FiniteBlaschke> samples() {
  return {FiniteBlaschke::monomial(2),
          FiniteBlaschke(0, {0.5, Complex(0.0, -0.3)}),
          FiniteBlaschke(1, {0.4}),
          FiniteBlaschke(0, {0.4, 0.4}, false),
          FiniteBlaschke(0, {Complex(0.3, 0.2), -0.6, Complex(0.0, 0.7)}),
          FiniteBlaschke::automorphism(0.5)};
}

}  // namespace

TEST_CASE("Blaschke construction rules") {
  CHECK_THROWS_AS(FiniteBlaschke(0, {}), InvalidInput);
  CHECK_THROWS_AS(FiniteBlaschke(0, {1.0}), InvalidInput);
  CHECK_THROWS_AS(FiniteBlaschke(0, {0.0}), InvalidInput);
  CHECK_THROWS_AS(FiniteBlaschke(1, {}, true, 2.0), InvalidInput);
  CHECK(FiniteBlaschke(2, {0.5, 0.1}).degree() == 4);
}

TEST_CASE("Blaschke evaluation") {
  CHECK(std::abs(blaschke_eval(FiniteBlaschke(0, {0.5}), 0.0) - 0.5) < 1e-15);
  for (const auto& B : samples()) {
    for (const Complex& a : B.zeros()) CHECK(std::abs(blaschke_eval(B, a)) < 1e-15);
    for (const Complex& z : {Complex(0.3, 0.1), Complex(-0.7, 0.2)}) {
      const Complex ref = oracle::blaschke(B.origin_multiplicity(), B.zeros(), B.normalized(), z);
      CHECK(std::abs(blaschke_eval(B, z) - B.phase() * ref) < 1e-14);
    }
  }
  const FiniteBlaschke B(0, {0.5, Complex(0.0, -0.3)});
  CHECK(std::abs(blaschke_eval(B, std::polar(1.0, kPi / 7))) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(blaschke_eval(FiniteBlaschke(0, {0.5}), 2.0), InvalidInput);
}

TEST_CASE("Blaschke products are unimodular on the circle") {
  for (const auto& B : samples()) {
    double worst = 0.0;
    for (int t = 0; t < 512; ++t) {
      worst = std::max(worst, std::abs(std::abs(blaschke_eval(B, std::polar(1.0, 2 * kPi * t / 512))) - 1.0));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Blaschke Taylor coefficients") {
  CHECK(blaschke_taylor(FiniteBlaschke::monomial(2), 4) == TruncatedSeries({0.0, 0.0, 1.0, 0.0, 0.0}));
  const TruncatedSeries phi = blaschke_taylor(FiniteBlaschke::automorphism(0.5), 3);
  CHECK(approx_equal(phi, {0.5, -0.75, -0.375, -0.1875}, 1e-15));
  for (const auto& B : samples()) {
    const TruncatedSeries t = blaschke_taylor(B, 60);
    CHECK(std::abs(series_eval(t, 0.3) - blaschke_eval(B, 0.3)) < 1e-10);
    oracle::Vec ref = oracle::blaschke_taylor(B.origin_multiplicity(), B.zeros(), B.normalized(), 60);
    for (auto& c : ref) c *= B.phase();
    CHECK(max_diff(to_vec(t), ref) < 1e-13);
  }
}

TEST_CASE("products, powers and quotients") {
  const FiniteBlaschke a(0, {0.5});
  const FiniteBlaschke b = FiniteBlaschke::automorphism(Complex(0.0, 0.3));
  const FiniteBlaschke ab = a * b;
  for (const Complex& z : {Complex(0.2, 0.1), Complex(-0.5, 0.4)}) {
    CHECK(std::abs(blaschke_eval(ab, z) - blaschke_eval(a, z) * blaschke_eval(b, z)) < 1e-14);
    CHECK(std::abs(blaschke_eval(a.power(3), z) - std::pow(blaschke_eval(a, z), 3)) < 1e-14);
  }
  const auto q = ab.divide(b);
  REQUIRE(q.has_value());
  CHECK(std::abs(blaschke_eval(*q, 0.3) - blaschke_eval(a, 0.3)) < 1e-14);
  CHECK_FALSE(a.divide(FiniteBlaschke(0, {0.2})).has_value());
  CHECK_FALSE(a.divide(a).has_value());
}

TEST_CASE("model space basis") {
  const ModelSpaceBasis z2 = model_space_basis(FiniteBlaschke::monomial(2), 6);
  REQUIRE(z2.basis.size() == 2);
  CHECK(z2.basis[0] == TruncatedSeries::constant(1.0, 6));
  CHECK(z2.basis[1] == TruncatedSeries::monomial(1, 6));

  // Normalized reproducing kernel at 0.5.
  const ModelSpaceBasis k = model_space_basis(FiniteBlaschke(0, {0.5}), 40);
  for (int j = 0; j <= 40; ++j) {
    CHECK(std::abs(k.basis[0][j] - std::sqrt(0.75) * std::pow(0.5, j)) < 1e-15);
  }

  const int D = 160;
  for (const auto& B : samples()) {
    const CMatrix E = model_space_matrix(B, D);
    // Orthonormal in H^2, by explicit coefficient sums.
    for (int i = 0; i < B.degree(); ++i) {
      for (int j = 0; j < B.degree(); ++j) {
        const oracle::C g = oracle::dot(to_vec(CVector(E.col(i))), to_vec(CVector(E.col(j))));
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
    // Orthogonal to B z^j.
    const oracle::Vec b = oracle::blaschke_taylor(B.origin_multiplicity(), B.zeros(), B.normalized(), D);
    double worst = 0.0;
    for (int j = 0; j + B.degree() <= 40; ++j) {
      oracle::Vec bz(D + 1, 0.0);
      for (int k = 0; k + j <= D; ++k) bz[k + j] = b[k] * B.phase();
      for (int i = 0; i < B.degree(); ++i) {
        worst = std::max(worst, std::abs(oracle::dot(bz, to_vec(CVector(E.col(i))))));
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("supremum on a circle") {
  CHECK(sup_on_circle(FiniteBlaschke::monomial(2), 0.8) == Approx(0.64).epsilon(1e-9));
  CHECK(sup_on_circle(FiniteBlaschke(0, {0.5}), 0.8) == Approx(1.3 / 1.4).epsilon(1e-9));
  CHECK(sup_on_circle(FiniteBlaschke::automorphism(0.5), 0.8) == Approx(1.3 / 1.4).epsilon(1e-9));
  for (const auto& B : samples()) {
    double prev = 0.0;
    for (double s : {0.5, 0.7, 0.9}) {
      // Brute force over a fine grid as the reference.
      double ref = 0.0;
      for (int t = 0; t < 20000; ++t) {
        ref = std::max(ref, std::abs(oracle::blaschke(B.origin_multiplicity(), B.zeros(), B.normalized(),
                                                      std::polar(s, 2 * kPi * t / 20000))));
      }
      const double v = sup_on_circle(B, s);
      CHECK(v < 1.0);
      CHECK(v >= ref - 1e-12);
      CHECK(v - ref < 1e-6);
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(sup_on_circle(FiniteBlaschke::monomial(1), 1.0), InvalidInput);
}

TEST_CASE("scaled factorization") {
  const ScaledFactorization z = scaled_factorization(FiniteBlaschke::monomial(1), 0.5, 10);
  CHECK(z.b.degree() == 1);
  CHECK(z.b.is_monomial());
  CHECK(approx_equal(z.F_s, TruncatedSeries::constant(2.0, 10), 1e-14));

  const ScaledFactorization z2 = scaled_factorization(FiniteBlaschke::monomial(2), 0.8, 10);
  CHECK(approx_equal(z2.F_s, TruncatedSeries::constant(1.5625, 10), 1e-13));

  const FiniteBlaschke B(0, {0.4});
  const ScaledFactorization sf = scaled_factorization(B, 0.8, 40);
  // B(z/s) from the quotient formula, expanded independently.
  oracle::Vec target(41);
  for (int k = 0; k <= 40; ++k) target[k] = oracle::blaschke_taylor(0, {0.4}, true, 40)[k] * std::pow(1.25, k);
  const oracle::Vec prod = oracle::convolve(to_vec(blaschke_taylor(sf.b, 40)), to_vec(sf.F_s), 40);
  CHECK(max_diff(prod, target) < 1e-9);
  CHECK(sf.product_residual < 1e-9);
  CHECK(sf.min_modulus > 0.0);

  for (const auto& C : samples()) {
    if (C.max_zero_modulus() >= 0.8) continue;
    const ScaledFactorization f = scaled_factorization(C, 0.8, 40);
    for (const Complex& a : C.zeros()) CHECK(std::abs(blaschke_eval(f.b, 0.8 * a)) < 1e-10);
  }
  CHECK_THROWS_AS(scaled_factorization(FiniteBlaschke(0, {0.9}), 0.8, 10), PreconditionError);
}
