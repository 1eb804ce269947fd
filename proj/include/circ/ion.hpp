#ifndef CIRC_ION_HPP
#define CIRC_ION_HPP

#include <numbers>

#include "circ/fock.hpp"

namespace circ {

// Effective laser parameters.  Times are in microseconds, frequencies in
// rad/us; the defaults make 2 pi / Omega = 1 us.  phi is fixed at pi; other
// values are rejected rather than silently accepted.
struct LaserParams {
  double Omega = 2.0 * std::numbers::pi;
  double eta = 0.1;
  double Lambda = 0.2 * std::numbers::pi;
  double phi = std::numbers::pi;

  double omega_bar() const { return eta * eta * Omega; }
};

// Qubit (x) oscillator composite amplitudes: the motional vector paired
// with |up> and the one paired with |down>, sharing one truncation dim.
struct IonState {
  FockVector up;
  FockVector down;

  IonState(FockVector u, FockVector d) : up(std::move(u)), down(std::move(d)) {
    if (up.dim() != down.dim()) throw DimensionMismatch("IonState: dim mismatch");
  }
  static IonState in_upper(FockVector motional) {
    FockVector zero(motional.dim());
    return IonState(std::move(motional), std::move(zero));
  }

  int dim() const { return up.dim(); }
  double squared_norm() const { return up.squared_norm() + down.squared_norm(); }
  bool is_normalized(double tol = kNormTol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }
};

// eta = delta_k sqrt(hbar / (2 m omega)); SI units, hbar defaults to the
// 2019 SI value (pass hbar = 1 for natural units).
double lamb_dicke(double delta_k, double mass, double omega,
                  double hbar = 1.054571817e-34);

// f_k(n) = e^{-eta^2/2} sum_{l=0}^{n} (i eta)^{2l+k} / (l! (l+k)!) * n!/(n-l)!
Complex coupling_f(int n, int k, double eta);

enum class HamiltonianKind { Carrier, Red, Blue, KerrApprox };

// Resonance (detuning = 0) Hamiltonian on the composite space, basis index
// s*dim + n with s = 0 for |up>, 1 for |down>.  sideband_k is ignored for
// Carrier and KerrApprox.
Eigen::MatrixXcd build_hamiltonian(HamiltonianKind kind, int sideband_k,
                                   const LaserParams& params, int dim,
                                   double detuning = 0.0);

// Closed-form evolution under Omega sigma_x - eta^2 Omega n sigma_x: in the
// sigma_x basis the |up_x> component gains e^{-i Omega t} e^{+i Omega_bar t n}
// per Fock level and the |down_x> component the conjugate phases.
IonState kerr_evolve(const IonState& state, double t, const LaserParams& params);

// e^{-sign * i Lambda t sigma_x} on the electronic factor.
IonState rotate_pulse(const IonState& state, double t, double Lambda, int sign);

struct MeasureResult {
  double prob = 0.0;
  IonState post;
};

// Projective no-fluorescence measurement: keeps the |up> branch.
MeasureResult measure_up(const IonState& state);

// Left-hand side of the Kerr-validity condition eta^2 (Q + nbar + 1)/4;
// returns eta^2/4 for the vacuum.
double kerr_validity(const FockVector& v, double eta);

// e^{-i H t} via spectral decomposition of a Hermitian H.
IonState evolve_dense(const IonState& state, const Eigen::MatrixXcd& H, double t);

}  // namespace circ

#endif
