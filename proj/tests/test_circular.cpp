#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circ/circular.hpp"

using namespace circ;

namespace {

// Independent Gram-sum oracle: lambda = sum_{j,k} conj(C_j) C_k <alpha_j|alpha_k>.
double lambda_gram(int N, Parity parity, double r2) {
  const double r = std::sqrt(r2);
  Complex sum = 0.0;
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= N; ++k) {
      const Complex aj = std::polar(r, 2.0 * std::numbers::pi * j / N);
      const Complex ak = std::polar(r, 2.0 * std::numbers::pi * k / N);
      Complex cjk = std::exp(-0.5 * (std::norm(aj) + std::norm(ak)) + std::conj(aj) * ak);
      if (parity == Parity::Odd)
        cjk *= std::polar(1.0, 2.0 * std::numbers::pi * (k - j) / N);
      sum += cjk;
    }
  }
  return sum.real();
}

}  // namespace

TEST_CASE("lambda_norm equals the Gram sum") {
  for (int N : {2, 3, 8, 16, 32}) {
    for (double r : {0.5, 2.0, 6.0}) {
      const double r2 = r * r;
      CHECK(lambda_norm(N, Parity::Even, r2) ==
            doctest::Approx(lambda_gram(N, Parity::Even, r2)).epsilon(1e-10));
      if (N % 2 == 0)
        CHECK(lambda_norm(N, Parity::Odd, r2) ==
              doctest::Approx(lambda_gram(N, Parity::Odd, r2)).epsilon(1e-10));
    }
  }
}

TEST_CASE("lambda_norm ties to the partition function") {
  // lambda = N^2 e^{-y} Z_N(y) for both families.
  for (int N : {2, 4, 8}) {
    for (double y : {0.5, 2.0, 6.8, 12.8}) {
      CHECK(lambda_norm(N, Parity::Even, y) ==
            doctest::Approx(N * N * std::exp(-y) * partition(N, Parity::Even, y))
                .epsilon(1e-10));
      CHECK(lambda_norm(N, Parity::Odd, y) ==
            doctest::Approx(N * N * std::exp(-y) * partition(N, Parity::Odd, y))
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("partition closed forms at N=2") {
  for (double y : {0.3, 1.0, 4.0, 10.0}) {
    CHECK(partition(2, Parity::Even, y) == doctest::Approx(std::cosh(y)).epsilon(1e-13));
    CHECK(partition(2, Parity::Odd, y) == doctest::Approx(std::sinh(y)).epsilon(1e-13));
  }
  CHECK(partition(2, Parity::Even, 0.0) == 1.0);
  CHECK(partition(2, Parity::Odd, 0.0) == 0.0);
  CHECK_THROWS_AS(partition(2, Parity::Even, -1.0), NonPositiveInput);
}

TEST_CASE("odd family validation") {
  CHECK_THROWS_AS(lambda_norm(3, Parity::Odd, 1.0), DimensionMismatch);
  CHECK_THROWS_AS(circular_state({2, Parity::Odd, 0.0}, 16), DegenerateState);
  CHECK_THROWS_AS(fock_probability(2, Parity::Odd, 0.0, 1), DegenerateState);
}

TEST_CASE("fock_probability matches the built state and sums to one") {
  const int N = 8;
  const double a = 6.8;
  const int dim = choose_dim(std::sqrt(a));
  const FockVector psi = circular_state({N, Parity::Even, std::sqrt(a)}, dim);
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double p = fock_probability(N, Parity::Even, a, n);
    CHECK(std::abs(p - std::norm(psi[n])) < 1e-9);
    total += p;
  }
  // add the (analytic) tail beyond dim
  for (int n = dim + (N - dim % N) % N; n < dim + 200; n += N)
    total += fock_probability(N, Parity::Even, a, n);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("modular Fock support") {
  const int dim = 64;
  const FockVector even = circular_state({8, Parity::Even, 2.0}, dim);
  const FockVector odd = circular_state({8, Parity::Odd, 2.0}, dim);
  for (int n = 0; n < dim; ++n) {
    if (n % 8 != 0) CHECK(std::abs(even[n]) <= 1e-12);
    if (n % 8 != 7) CHECK(std::abs(odd[n]) <= 1e-12);
  }
  CHECK(even.is_normalized());
  CHECK(odd.is_normalized());
}

TEST_CASE("moments agree with finite differences of the partition function") {
  for (int N : {4, 8}) {
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      for (double y : {2.0, 6.8, 12.8}) {
        const double z0 = partition(N, parity, y);
        const double h1 = y * 1e-5;
        const double d1 =
            (partition(N, parity, y + h1) - partition(N, parity, y - h1)) / (2.0 * h1);
        CHECK(moments_from_partition(N, parity, y, 1) ==
              doctest::Approx(y * d1 / z0).epsilon(1e-6));
        // second derivative needs a larger step to stay above roundoff
        const double h2 = y * 1e-4;
        const double d1b =
            (partition(N, parity, y + h2) - partition(N, parity, y - h2)) / (2.0 * h2);
        const double d2 = (partition(N, parity, y + h2) - 2.0 * z0 +
                           partition(N, parity, y - h2)) /
                          (h2 * h2);
        CHECK(moments_from_partition(N, parity, y, 2) ==
              doctest::Approx((y * d1b + y * y * d2) / z0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("even states are invariant under alpha0 -> -alpha0 for even N") {
  const int dim = 48;
  const FockVector plus = circular_state({4, Parity::Even, 1.8}, dim);
  const FockVector minus = circular_state({4, Parity::Even, -1.8}, dim);
  CHECK((plus.amps() - minus.amps()).norm() < 1e-10);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(8, 0.1).tag == RegimeTag::Vacuum);
  CHECK(classify_regime(8, 3.76).tag == RegimeTag::ZeroPlusN);
  CHECK(classify_regime(8, 6.80).tag == RegimeTag::FockN);
  CHECK(classify_regime(8, 12.17).tag == RegimeTag::NPlus2N);
  const RegimeReport rep = classify_regime(8, 3.76);
  CHECK(rep.x2 == doctest::Approx(std::numbers::e * 3.76 / 8.0).epsilon(1e-14));
  CHECK(rep.x3 == doctest::Approx(rep.x2 / 4.0).epsilon(1e-14));
}

TEST_CASE("target overlaps reproduce the reference superpositions") {
  const double o1 =
      target_overlap({8, Parity::Even, std::sqrt(3.76)}, TargetSpec::two_fock(0, 8), 48);
  CHECK(std::abs(o1 - 0.999960) < 1e-4);
  const double o5 =
      target_overlap({16, Parity::Even, std::sqrt(6.80)}, TargetSpec::two_fock(0, 16), 64);
  CHECK(std::abs(o5 - 0.999999) < 1e-4);
  // off-support Fock target
  CHECK(target_overlap({8, Parity::Even, 2.0}, TargetSpec::fock(3), 48) ==
        doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("target spec validation") {
  CHECK_THROWS_AS(TargetSpec::fock(-1), NonPositiveInput);
  CHECK_THROWS_AS(TargetSpec::two_fock(5, 5), NonPositiveInput);
  CHECK_THROWS_AS(TargetSpec::two_fock(-1, 3), NonPositiveInput);
}
