#include <Eigen/Eigenvalues>

#include "helpers.hpp"

using namespace testing;
using doctest::Approx;

TEST_CASE("Wold pieces for the shift are Taylor coefficients") {
  SeededRng rng(1);
  const TruncatedSeries f = rng.series(10, 10);
  const WoldCoordinates w = wold_decompose(f, FiniteBlaschke::monomial(1));
  CHECK(w.coords.cols() == 1);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(w.coords(k, 0) - f[k]) < 1e-15);
  CHECK_FALSE(w.truncation_warning);
}

TEST_CASE("Wold pieces for z^2 group even and odd blocks") {
  const WoldCoordinates w = wold_decompose({1.0, 1.0, 1.0, 1.0}, FiniteBlaschke::monomial(2));
  REQUIRE(w.levels() >= 2);
  CHECK(std::abs(w.coords(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(w.coords(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(w.coords(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(w.coords(1, 1) - 1.0) < 1e-15);
  for (int k = 2; k < w.levels(); ++k) CHECK(w.level_norm(k) < 1e-15);
}

TEST_CASE("Wold coordinates agree with a least-squares regression") {
  const FiniteBlaschke B(0, {0.5, 0.5});
  SeededRng rng(21);
  const TruncatedSeries f = rng.series(12, 12);
  const int levels = 40;
  const int D = 260;
  const WoldCoordinates w = wold_decompose(f, B, levels);

  // Regress f on {B^k e_j}, every column expanded by convolution.
  const oracle::Vec b = oracle::blaschke_taylor(0, {0.5, 0.5}, true, D);
  const CMatrix E = model_space_matrix(B, D);
  std::vector<oracle::Vec> cols;
  std::vector<oracle::Vec> cur = {to_vec(CVector(E.col(0))), to_vec(CVector(E.col(1)))};
  for (int k = 0; k < levels; ++k) {
    for (int j = 0; j < 2; ++j) cols.push_back(cur[j]);
    for (int j = 0; j < 2; ++j) cur[j] = oracle::convolve(cur[j], b, D);
  }
  const oracle::Vec x = oracle::least_squares(cols, to_vec(f.truncated(D)));
  double worst = 0.0;
  for (int k = 0; k < std::min(levels, w.levels()); ++k) {
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(w.coords(k, j) - x[2 * k + j]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Wold reconstruction and Parseval") {
  const std::vector<FiniteBlaschke> Bs = {FiniteBlaschke::monomial(2), FiniteBlaschke(0, {0.5, Complex(0, -0.3)}),
                                          FiniteBlaschke(1, {0.4})};
  SeededRng rng(5);
  for (const auto& B : Bs) {
    for (int t = 0; t < 10; ++t) {
      const TruncatedSeries f = rng.series(30, 40);
      const WoldCoordinates w = wold_decompose(f, B);
      const double fn = norm_h2(f);
      CHECK(norm_h2(wold_reconstruct(w, 40) - f) < 1e-10 * fn);
      double pieces = 0.0;
      for (int k = 0; k < w.levels(); ++k) pieces += w.level_norm(k) * w.level_norm(k);
      CHECK(std::abs(pieces - fn * fn) < 1e-9 * fn * fn);
    }
  }
}

TEST_CASE("Wold reconstruction of single coordinates") {
  const FiniteBlaschke B(0, {0.5, 0.2});
  WoldCoordinates w{B, CMatrix::Zero(3, 2), 0.0, false, 30};
  w.coords(0, 0) = 1.0;
  const CMatrix E = model_space_matrix(B, 30);
  CHECK(approx_equal(wold_reconstruct(w, 30), TruncatedSeries(CVector(E.col(0))), 1e-15));
  w.coords.setZero();
  CHECK(norm_h2(wold_reconstruct(w, 30)) == 0.0);
}

TEST_CASE("too few levels are reported") {
  const FiniteBlaschke B(0, {0.9});
  SeededRng rng(2);
  const TruncatedSeries f = rng.series(20, 20);
  CHECK(wold_decompose(f, B, 3).truncation_warning);
  CHECK_THROWS_AS(wold_decompose(f, B, 3, true), TruncationInsufficient);
}

TEST_CASE("space norms") {
  const FiniteBlaschke z2 = FiniteBlaschke::monomial(2);
  CHECK(space_norm(TruncatedSeries::monomial(2, 2), NormSpec::wold_one(1.0, z2)) == Approx(std::sqrt(2.0)));
  const TruncatedSeries k{0.6, -0.8};
  CHECK(space_norm(k, NormSpec::wold_two(-1.0, 3, z2)) == Approx(norm_h2(k) / std::sqrt(3.0)));
  CHECK(space_norm(k, NormSpec::alpha_standard(1.0)) == Approx(norm_alpha(k, 1.0)));

  SeededRng rng(4);
  const FiniteBlaschke B(0, {0.3, Complex(-0.2, 0.5)});
  for (int t = 0; t < 10; ++t) {
    const TruncatedSeries f = rng.series(20, 20);
    CHECK(std::abs(space_norm(f, NormSpec::wold_one(0.0, B)) - norm_h2(f)) < 1e-10 * norm_h2(f));
  }
  CHECK_THROWS_AS(NormSpec::wold_one(-0.5, z2).validate(), InvalidInput);
  CHECK_THROWS_AS(NormSpec::wold_two(0.5, 1, z2).validate(), InvalidInput);
}

TEST_CASE("wold-one and Dirichlet norms stay comparable as the degree grows") {
  const FiniteBlaschke B(0, {0.5, 0.2});
  auto extremes = [&](int D) {
    const CMatrix Gw = gram_of_functions(CMatrix::Identity(D + 1, D + 1), NormSpec::wold_one(0.5, B));
    CMatrix Ga = CMatrix::Zero(D + 1, D + 1);
    for (int k = 0; k <= D; ++k) Ga(k, k) = std::pow(k + 1.0, 0.5);
    const Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(Gw, Ga);
    return std::pair{std::sqrt(es.eigenvalues().minCoeff()), std::sqrt(es.eigenvalues().maxCoeff())};
  };
  const auto [lo32, hi32] = extremes(32);
  const auto [lo64, hi64] = extremes(64);
  CHECK(std::abs(lo64 - lo32) < 0.1 * lo32);
  CHECK(std::abs(hi64 - hi32) < 0.1 * hi32);
}

TEST_CASE("parameter selection") {
  const FiniteBlaschke z2 = FiniteBlaschke::monomial(2);
  const NormParameters p = select_parameters(z2, -1.0, 0.8);
  CHECK(p.N == 1);
  CHECK(p.gamma == Approx(std::sqrt(0.5)));
  CHECK(p.beta == Approx(0.64));
  CHECK(p.contraction == Approx(0.64 / std::sqrt(0.5)));

  const NormParameters q = select_parameters(z2, -1.0, 0.95);
  CHECK(q.N == 5);
  CHECK(q.gamma == Approx(std::pow(6.0 / 5.0, -0.5)));
  CHECK(gamma2(-1.0, 9) == Approx(std::pow(10.0 / 9.0, -0.5)));

  // Smallest admissible N by direct search.
  for (const auto& B : {z2, FiniteBlaschke(0, {0.4, 0.4}, false), FiniteBlaschke(1, {0.3})}) {
    for (double alpha : {-1.0, -0.5, -0.2}) {
      for (double s : {0.8, 0.9}) {
        const NormParameters r = select_parameters(B, alpha, s);
        int N = 1;
        while (std::pow(1.0 - 1.0 / (N + 1), -alpha / 2) <= r.beta) ++N;
        CHECK(r.N == N);
        CHECK(r.contraction < 1.0);
        if (r.N > 1) CHECK(gamma2(alpha, r.N - 1) <= r.beta);
      }
    }
  }
  CHECK_THROWS_AS(select_parameters(FiniteBlaschke(0, {0.9}), -1.0, 0.8), PreconditionError);
  CHECK(suggest_s(FiniteBlaschke(0, {0.6})) == Approx(0.8));
}

TEST_CASE("lower bounds for multiplication by B") {
  const FiniteBlaschke B(0, {0.5, Complex(0.0, -0.3)});
  for (double alpha : {0.0, 0.5, 1.0}) {
    const LowerBoundReport r = verify_lower_bound(B, NormSpec::wold_one(alpha, B), 30, 3);
    CHECK(r.pass());
    CHECK(r.min_ratio >= 1.0 - 1e-9);
    if (alpha == 0.0) CHECK(r.min_ratio == Approx(1.0).epsilon(1e-9));
  }
  // f in K_B moves to level 1: ratio 2^{alpha/2}.
  const TruncatedSeries e0(CVector(model_space_matrix(B, 80).col(0)));
  const NormSpec one = NormSpec::wold_one(1.0, B);
  CHECK(space_norm(series_mul(blaschke_taylor(B, 80), e0, 80), one) / space_norm(e0, one) ==
        Approx(std::sqrt(2.0)).epsilon(1e-9));

  for (double alpha : {-1.0, -0.5}) {
    const int N = select_parameters(B, alpha, 0.8).N;
    const LowerBoundReport r = verify_lower_bound(B, NormSpec::wold_two(alpha, N, B), 30, 3);
    CHECK(r.pass());
    CHECK(r.min_ratio >= r.gamma - 1e-9);
    // Weight quotient at level N - 1: N^alpha before, (N+1)^alpha after.
    const double expected = std::sqrt(std::pow(N + 1.0, alpha) / std::pow(static_cast<double>(N), alpha));
    CHECK(r.witness_ratio == Approx(expected).epsilon(1e-9));
    CHECK(std::abs(r.witness_ratio - r.gamma) < 1e-9);
  }
}
