#ifndef CIRC_CIRCULAR_HPP
#define CIRC_CIRCULAR_HPP

#include "circ/fock.hpp"

namespace circ {

enum class Parity { Even, Odd };

// N coherent states of radius |alpha0| equally spaced on a circle, with
// coefficients C_k = 1 (Even) or C_k = e^{i 2 pi k / N} (Odd).
struct CircularSpec {
  int N = 2;
  Parity parity = Parity::Even;
  Complex alpha0 = 0.0;

  double radius() const { return std::abs(alpha0); }
  double r2() const { return std::norm(alpha0); }
};

// Fock-space states the circular states are compared against.
struct TargetSpec {
  enum class Kind { Vacuum, Fock, TwoFockEqual };
  Kind kind = Kind::Vacuum;
  int n1 = 0;
  int n2 = 0;  // TwoFockEqual means (|n1> + |n2>)/sqrt(2), n1 < n2

  static TargetSpec vacuum() { return {Kind::Vacuum, 0, 0}; }
  static TargetSpec fock(int n);
  static TargetSpec two_fock(int n1, int n2);
};

// Normalized superposition sum_k C_k |alpha_k>, global phase fixed so that
// the lowest-support amplitude (n=0 Even, n=N-1 Odd) is real positive.
FockVector circular_state(const CircularSpec& spec, int dim);

// Closed-form squared norm of sum_k C_k |alpha_k> (the Gram sum).
double lambda_norm(int N, Parity parity, double r2);

// Even: sum_n y^{Nn}/(Nn)!   Odd: sum_{k>=1} y^{kN-1}/(kN-1)!
double partition(int N, Parity parity, double y);

// P_n of the circular-state number distribution; zero off the modular
// support (n = 0 mod N for Even, n = N-1 mod N for Odd).
double fock_probability(int N, Parity parity, double r2, int n);

// <n^k> (k = 1, 2) by direct weighted series over the distribution.
double moments_from_partition(int N, Parity parity, double y, int k);

enum class RegimeTag { Vacuum, FockN, ZeroPlusN, NPlus2N, Mixed };

struct RegimeThresholds {
  double t_small = 0.1;
  double t_large = 10.0;
  // Near-1 band for the superposition regimes, symmetric on a log scale.
  double band_lo = 0.75;
  double band_hi = 4.0 / 3.0;
};

// Raw interference-regime ratios plus an advisory tag.
struct RegimeReport {
  double x1 = 0.0;  // (e r^2 / N)^N
  double x2 = 0.0;  // e r^2 / N
  double x3 = 0.0;  // e r^2 / (4N)
  RegimeTag tag = RegimeTag::Mixed;
};

RegimeReport classify_regime(int N, double r2, const RegimeThresholds& thresholds = {});

// |<target|Psi>|^2 against the numerically built circular state.
double target_overlap(const CircularSpec& spec, const TargetSpec& target, int dim);

}  // namespace circ

#endif
