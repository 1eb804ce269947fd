#include "circ/circular.hpp"

#include <cmath>
#include <numbers>

namespace circ {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(int N, Parity parity) {
  if (N < 1) throw DimensionMismatch("circular: N must be >= 1");
  if (parity == Parity::Odd && (N < 2 || N % 2 != 0))
    throw DimensionMismatch("circular: the odd family requires even N");
}
}  // namespace

TargetSpec TargetSpec::fock(int n) {
  if (n < 0) throw NonPositiveInput("TargetSpec: n must be >= 0");
  return {Kind::Fock, n, 0};
}

TargetSpec TargetSpec::two_fock(int n1, int n2) {
  if (n1 < 0 || n2 <= n1) throw NonPositiveInput("TargetSpec: need 0 <= n1 < n2");
  return {Kind::TwoFockEqual, n1, n2};
}

FockVector circular_state(const CircularSpec& spec, int dim) {
  validate(spec.N, spec.parity);
  if (spec.parity == Parity::Odd && spec.radius() == 0.0)
    throw DegenerateState("circular_state: odd family vanishes at alpha0 = 0");
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(dim);
  for (int k = 1; k <= spec.N; ++k) {
    const double phase = kTwoPi * k / spec.N;
    const Complex alpha_k = spec.alpha0 * std::polar(1.0, phase);
    const Complex coeff =
        (spec.parity == Parity::Even) ? Complex(1.0) : std::polar(1.0, phase);
    // Raw (unrenormalized) coherent amplitudes keep the Gram relations exact.
    sum += coeff * coherent_state(alpha_k, dim, /*tail_tol=*/0.0).amps();
  }
  const double norm = sum.norm();
  if (norm < 1e-150)
    throw DegenerateState("circular_state: superposition norm vanishes");
  sum /= norm;
  const int n0 = (spec.parity == Parity::Even) ? 0 : spec.N - 1;
  const Complex ref = sum(n0);
  if (std::abs(ref) > 0.0) sum *= std::conj(ref) / std::abs(ref);
  return FockVector(std::move(sum));
}

double lambda_norm(int N, Parity parity, double r2) {
  validate(N, parity);
  if (N == 1) return 1.0;
  double s = static_cast<double>(N);
  for (int k = 1; k < N; ++k) {
    const double sk = std::sin(std::numbers::pi * k / N);
    double phase = r2 * std::sin(kTwoPi * k / N);
    if (parity == Parity::Odd) phase += kTwoPi * k / N;
    s += 2.0 * k * std::exp(-2.0 * r2 * sk * sk) * std::cos(phase);
  }
  return s;
}

double partition(int N, Parity parity, double y) {
  validate(N, parity);
  if (y < 0.0) throw NonPositiveInput("partition: y must be >= 0");
  if (y == 0.0) return (parity == Parity::Even) ? 1.0 : 0.0;
  double sum = 0.0;
  for (int k = (parity == Parity::Even) ? 0 : 1;; ++k) {
    const int n = (parity == Parity::Even) ? N * k : N * k - 1;
    const double term = std::exp(n * std::log(y) - log_factorial(n));
    sum += term;
    if (k > 2 && n > y && term < sum * 1e-16) break;
    if (n > 100000) break;
  }
  return sum;
}

double fock_probability(int N, Parity parity, double r2, int n) {
  validate(N, parity);
  if (n < 0) return 0.0;
  const int residue = (parity == Parity::Even) ? 0 : (N - 1) % N;
  if (n % N != residue) return 0.0;
  const double z = partition(N, parity, r2);
  if (z <= 0.0) throw DegenerateState("fock_probability: zero partition function");
  return std::exp(n * std::log(r2) - log_factorial(n)) / z;
}

double moments_from_partition(int N, Parity parity, double y, int k) {
  validate(N, parity);
  if (k < 0 || k > 2) throw NonPositiveInput("moments_from_partition: k must be 1 or 2");
  if (k == 0) return 1.0;
  const double z = partition(N, parity, y);
  if (z <= 0.0) throw DegenerateState("moments_from_partition: zero partition function");
  double s = 0.0;
  for (int j = (parity == Parity::Even) ? 0 : 1;; ++j) {
    const int n = (parity == Parity::Even) ? N * j : N * j - 1;
    if (n > 0) {
      const double term = std::exp(n * std::log(y) - log_factorial(n));
      s += std::pow(static_cast<double>(n), k) * term;
    }
    if (j > 2 && n > y && n > 0 &&
        std::exp(n * std::log(y) - log_factorial(n)) < z * 1e-18)
      break;
    if (n > 100000) break;
  }
  return s / z;
}

RegimeReport classify_regime(int N, double r2, const RegimeThresholds& th) {
  if (N < 2) throw DimensionMismatch("classify_regime: N must be >= 2");
  RegimeReport rep;
  rep.x2 = std::numbers::e * r2 / N;
  rep.x3 = rep.x2 / 4.0;
  rep.x1 = std::pow(rep.x2, N);
  // Tag decisions go through logs so huge x1 never overflows the logic.
  const double log_x1 = (rep.x2 > 0.0) ? N * std::log(rep.x2)
                                       : -std::numeric_limits<double>::infinity();
  if (log_x1 < std::log(th.t_small)) {
    rep.tag = RegimeTag::Vacuum;
  } else if (log_x1 > std::log(th.t_large) && log_x1 < N * std::log(4.0)) {
    rep.tag = RegimeTag::FockN;
  } else if (rep.x2 >= th.band_lo && rep.x2 <= th.band_hi) {
    rep.tag = RegimeTag::ZeroPlusN;
  } else if (rep.x3 >= th.band_lo && rep.x3 <= th.band_hi) {
    rep.tag = RegimeTag::NPlus2N;
  } else {
    rep.tag = RegimeTag::Mixed;
  }
  return rep;
}

double target_overlap(const CircularSpec& spec, const TargetSpec& target, int dim) {
  if (target.n1 >= dim || target.n2 >= dim)
    throw DimensionMismatch("target_overlap: target Fock index >= dim");
  const FockVector psi = circular_state(spec, dim);
  switch (target.kind) {
    case TargetSpec::Kind::Vacuum:
      return std::norm(psi[0]);
    case TargetSpec::Kind::Fock:
      return std::norm(psi[target.n1]);
    case TargetSpec::Kind::TwoFockEqual:
      return std::norm((psi[target.n1] + psi[target.n2]) / std::sqrt(2.0));
  }
  return 0.0;
}

}  // namespace circ
