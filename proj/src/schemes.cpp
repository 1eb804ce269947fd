#include "circ/schemes.hpp"

#include <cmath>

namespace circ {

namespace {

constexpr double kPi = std::numbers::pi;

void check_cycles(int M) {
  if (M < 1 || M > 8) throw DimensionMismatch("scheme plan: need 1 <= M <= 8");
}

}  // namespace

PulseSequence scheme1_plan(int M, double Omega, std::optional<double> eta_override) {
  check_cycles(M);
  if (Omega <= 0.0) throw NonPositiveInput("scheme1_plan: Omega must be positive");
  PulseSequence plan;
  plan.scheme = Scheme::S1;
  plan.M = M;
  plan.params.Omega = Omega;
  plan.params.eta = eta_override.value_or(std::pow(2.0, -0.5 * (M + 1)));
  const double omb = plan.params.omega_bar();
  const int N = 1 << M;
  double total = 0.0;
  for (int k = 1; k <= M; ++k) {
    const double tk = kPi / (std::pow(2.0, k) * omb);
    plan.pulses.push_back(PulseStep::evolve(tk));
    plan.pulses.push_back(PulseStep::measure());
    total += tk;
  }
  plan.target = CircularSpec{N, Parity::Even, std::polar(1.0, kPi / N)};
  plan.planned_total_time = total;
  return plan;
}

PulseSequence scheme2_plan(int M, double Omega, double Lambda) {
  check_cycles(M);
  if (Omega <= 0.0 || Lambda <= 0.0)
    throw NonPositiveInput("scheme2_plan: Omega, Lambda must be positive");
  PulseSequence plan;
  plan.scheme = Scheme::S2;
  plan.M = M;
  plan.params.Omega = Omega;
  plan.params.Lambda = Lambda;
  plan.params.eta = 1.0 / std::sqrt(2.0 * (M + 1));
  const double tau = kPi / ((M + 1) * plan.params.omega_bar());
  if (std::abs(Omega * tau - 2.0 * kPi) > 1e-9)
    throw std::logic_error("scheme2_plan: Omega*tau != 2*pi");
  double total = 0.0;
  for (int l = 1; l <= M; ++l) {
    const double tl = (static_cast<double>(l) / (M + 1) + 0.5) * kPi / Lambda;
    plan.pulses.push_back(PulseStep::rotate(tl, +1));
    plan.pulses.push_back(PulseStep::evolve(tau));
    plan.pulses.push_back(PulseStep::measure());
    total += tl + tau;
  }
  plan.target = CircularSpec{M + 1, Parity::Even, std::polar(1.0, M * kPi / (M + 1))};
  plan.planned_total_time = total;
  return plan;
}

std::vector<Complex> scheme2_roots(int M) {
  if (M < 1) throw DimensionMismatch("scheme2_roots: M must be >= 1");
  std::vector<Complex> roots;
  roots.reserve(M);
  for (int l = 1; l <= M; ++l)
    roots.push_back(std::polar(1.0, kPi + 2.0 * kPi * l / (M + 1)));
  return roots;
}

PulseSequence scheme3_plan(int M, double Omega, double Lambda) {
  check_cycles(M);
  if (Omega <= 0.0 || Lambda <= 0.0)
    throw NonPositiveInput("scheme3_plan: Omega, Lambda must be positive");
  PulseSequence plan;
  plan.scheme = Scheme::S3;
  plan.M = M;
  plan.params.Omega = Omega;
  plan.params.Lambda = Lambda;
  plan.params.eta = std::pow(2.0, -0.5 * (M + 1));
  const double omb = plan.params.omega_bar();
  const int N = 1 << M;
  double total = 0.0;
  for (int k = 1; k <= M; ++k) {
    const double tr = kPi / (std::pow(2.0, k) * Lambda);
    const double te = kPi / (std::pow(2.0, k) * omb);
    plan.pulses.push_back(PulseStep::rotate(tr, -1));
    plan.pulses.push_back(PulseStep::evolve(te));
    plan.pulses.push_back(PulseStep::measure());
    total += tr + te;
  }
  plan.target = CircularSpec{N, Parity::Odd, std::polar(1.0, kPi / N)};
  plan.planned_total_time = total;
  return plan;
}

RunResult run_sequence(const PulseSequence& plan, Complex alpha0, RunMode mode,
                       HamiltonianKind dense_hamiltonian,
                       const TruncationPolicy& policy) {
  const double r = std::abs(alpha0);
  const int dim = choose_dim(r, policy);
  RunResult result;
  result.dim = dim;

  FockVector initial = coherent_state(alpha0, dim, policy.tail_tol);
  result.validity_metric = kerr_validity(initial, plan.params.eta);
  IonState state = IonState::in_upper(std::move(initial));

  Eigen::MatrixXcd H;
  if (mode == RunMode::Dense)
    H = build_hamiltonian(dense_hamiltonian, 0, plan.params, dim);

  for (const PulseStep& step : plan.pulses) {
    switch (step.kind) {
      case PulseStep::Kind::Evolve:
        state = (mode == RunMode::ClosedForm)
                    ? kerr_evolve(state, step.duration, plan.params)
                    : evolve_dense(state, H, step.duration);
        break;
      case PulseStep::Kind::Rotate:
        state = rotate_pulse(state, step.duration, plan.params.Lambda, step.sign);
        break;
      case PulseStep::Kind::Measure: {
        MeasureResult m = measure_up(state);
        result.cycle_probs.push_back(m.prob);
        result.joint_prob *= m.prob;
        state = std::move(m.post);
        break;
      }
    }
  }

  result.final_motional = state.up;
  CircularSpec target = plan.target;
  target.alpha0 *= alpha0;
  try {
    const FockVector psi = circular_state(target, dim);
    result.fidelity_to_target = std::norm(inner_product(psi, result.final_motional));
  } catch (const DegenerateState&) {
    result.fidelity_to_target = 0.0;
  }
  result.analytic_joint_prob = success_probability(plan.scheme, plan.M, r * r);
  return result;
}

double success_probability(Scheme scheme, int M, double r2) {
  if (M < 1) throw DimensionMismatch("success_probability: M must be >= 1");
  const double denom = std::pow(4.0, M);
  switch (scheme) {
    case Scheme::S1:
      return lambda_norm(1 << M, Parity::Even, r2) / denom;
    case Scheme::S2:
      return lambda_norm(M + 1, Parity::Even, r2) / denom;
    case Scheme::S3:
      return lambda_norm(1 << M, Parity::Odd, r2) / denom;
  }
  return 0.0;
}

double per_cycle_probability_s1(double r2, const std::vector<double>& cycle_times,
                                double Omega, double eta) {
  const double omb = eta * eta * Omega;
  auto bracket = [&](double t) {
    return std::exp(-r2 * (1.0 - std::cos(2.0 * omb * t))) *
           std::cos(r2 * std::sin(2.0 * omb * t) - 2.0 * Omega * t);
  };
  if (cycle_times.size() == 1) {
    if (cycle_times[0] <= 0.0) throw NonPositiveInput("per_cycle_probability_s1: t > 0");
    return 0.5 * (1.0 + bracket(cycle_times[0]));
  }
  if (cycle_times.size() == 2) {
    const double t1 = cycle_times[0], t2 = cycle_times[1];
    if (t1 <= 0.0 || t2 <= 0.0) throw NonPositiveInput("per_cycle_probability_s1: t > 0");
    // Joint probability over two cycles; the (t1 +/- t2) separations occur
    // once per Gram pair, the t1 and t2 separations twice.
    return 0.25 * (1.0 + bracket(t1) + bracket(t2) +
                   0.5 * bracket(t1 + t2) + 0.5 * bracket(t1 - t2));
  }
  throw std::invalid_argument("per_cycle_probability_s1: one or two cycle times");
}

TotalTime total_time(const PulseSequence& plan, double measurement_overhead) {
  if (measurement_overhead < 0.0)
    throw NonPositiveInput("total_time: overhead must be >= 0");
  TotalTime t;
  const double overhead = plan.M * measurement_overhead;
  t.total = plan.planned_total_time + overhead;
  t.overhead_fraction = (t.total > 0.0) ? overhead / t.total : 0.0;
  return t;
}

}  // namespace circ
