#ifndef CIRC_SCHEMES_HPP
#define CIRC_SCHEMES_HPP

#include <optional>
#include <vector>

#include "circ/circular.hpp"
#include "circ/ion.hpp"

namespace circ {

enum class Scheme { S1, S2, S3 };

struct PulseStep {
  enum class Kind { Evolve, Rotate, Measure };
  Kind kind = Kind::Evolve;
  double duration = 0.0;  // us; 0 for Measure
  int sign = +1;          // Rotate only: +1 for H_r = +Lambda sigma_x, -1 for -Lambda sigma_x

  static PulseStep evolve(double t) { return {Kind::Evolve, t, +1}; }
  static PulseStep rotate(double t, int sign) { return {Kind::Rotate, t, sign}; }
  static PulseStep measure() { return {Kind::Measure, 0.0, +1}; }
};

// Ordered pulse/measurement plan.  target.alpha0 stores the unit-modulus
// phase factor the scheme imprints; run_sequence scales it by the run's
// initial amplitude.
struct PulseSequence {
  Scheme scheme = Scheme::S1;
  int M = 1;
  std::vector<PulseStep> pulses;
  LaserParams params;
  CircularSpec target;
  double planned_total_time = 0.0;  // sum of pulse durations, us
};

struct RunResult {
  std::vector<double> cycle_probs;
  double joint_prob = 1.0;
  FockVector final_motional{1};
  double fidelity_to_target = 0.0;
  double analytic_joint_prob = 0.0;
  double validity_metric = 0.0;
  int dim = 0;
};

// Scheme 1: M cycles of Evolve(t_k = pi / (2^k Omega_bar)) + Measure with
// eta^2 = 2^{-(M+1)}, producing the even N = 2^M circular state.
PulseSequence scheme1_plan(int M, double Omega,
                           std::optional<double> eta_override = std::nullopt);

// Scheme 2: M cycles of Rotate(t'_l, +) + Evolve(tau) + Measure with
// tau = pi / ((M+1) Omega_bar), eta = 1/sqrt(2(M+1)),
// t'_l = (l/(M+1) + 1/2) pi / Lambda, producing the even N = M+1 state.
PulseSequence scheme2_plan(int M, double Omega, double Lambda);

// Roots z_l = e^{i pi + 2 pi i l/(M+1)} of sum_{k=0}^{M} (-1)^{M-k} z^k.
std::vector<Complex> scheme2_roots(int M);

// Scheme 3: M cycles of Rotate(t'_k = pi/(2^k Lambda), -) +
// Evolve(t_k = pi/(2^k Omega_bar)) + Measure with eta^2 = 2^{-(M+1)},
// producing the odd N = 2^M circular state.
PulseSequence scheme3_plan(int M, double Omega, double Lambda);

enum class RunMode { ClosedForm, Dense };

RunResult run_sequence(const PulseSequence& plan, Complex alpha0,
                       RunMode mode = RunMode::ClosedForm,
                       HamiltonianKind dense_hamiltonian = HamiltonianKind::KerrApprox,
                       const TruncationPolicy& policy = {});

// Closed-form joint success probability; equals lambda_norm(N, ., r2)/2^{2M}.
double success_probability(Scheme scheme, int M, double r2);

// Literal one- and two-pulse conditional-probability formulas, including the
// e^{-2 i Omega t} phase terms.  cycle_times holds one or two durations; for
// two the returned value is the joint probability.
double per_cycle_probability_s1(double r2, const std::vector<double>& cycle_times,
                                double Omega, double eta);

struct TotalTime {
  double total = 0.0;               // us, pulses + measurement overhead
  double overhead_fraction = 0.0;   // overhead / total
};

TotalTime total_time(const PulseSequence& plan, double measurement_overhead = 0.2);

}  // namespace circ

#endif
