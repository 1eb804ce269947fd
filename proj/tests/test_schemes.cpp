#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circ/schemes.hpp"

using namespace circ;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("scheme 1 plan structure and timing") {
  const PulseSequence plan = scheme1_plan(4, kTwoPi);
  CHECK(plan.M == 4);
  CHECK(plan.params.eta == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-14));
  CHECK(plan.pulses.size() == 8);
  for (size_t i = 0; i < plan.pulses.size(); i += 2) {
    CHECK(plan.pulses[i].kind == PulseStep::Kind::Evolve);
    CHECK(plan.pulses[i + 1].kind == PulseStep::Kind::Measure);
    const int k = static_cast<int>(i / 2) + 1;
    CHECK(plan.pulses[i].duration ==
          doctest::Approx(kPi / (std::pow(2.0, k) * plan.params.omega_bar()))
              .epsilon(1e-14));
  }
  CHECK(plan.planned_total_time == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(plan.target.N == 16);
  CHECK(plan.target.parity == Parity::Even);
  CHECK(std::abs(plan.target.alpha0 - std::polar(1.0, kPi / 16.0)) < 1e-14);

  CHECK_THROWS_AS(scheme1_plan(0, kTwoPi), DimensionMismatch);
  CHECK_THROWS_AS(scheme1_plan(9, kTwoPi), DimensionMismatch);
  CHECK_THROWS_AS(scheme1_plan(2, -1.0), NonPositiveInput);
}

TEST_CASE("scheme 2 plan keeps Omega tau = 2 pi and its published total time") {
  for (int M : {1, 3, 5}) {
    const double Lambda = 0.2 * kPi;
    const PulseSequence plan = scheme2_plan(M, kTwoPi, Lambda);
    CHECK(plan.params.eta == doctest::Approx(1.0 / std::sqrt(2.0 * (M + 1))));
    CHECK(plan.pulses.size() == static_cast<size_t>(3 * M));
    const double tau = kPi / ((M + 1) * plan.params.omega_bar());
    CHECK(plan.params.Omega * tau == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(plan.planned_total_time ==
          doctest::Approx(M * (1.0 + kPi / Lambda)).epsilon(1e-12));
    CHECK(plan.target.N == M + 1);
  }
}

TEST_CASE("scheme 3 plan timing") {
  const double Lambda = 0.2 * kPi;
  const PulseSequence plan = scheme3_plan(4, kTwoPi, Lambda);
  CHECK(plan.pulses.size() == 12);
  CHECK(plan.planned_total_time ==
        doctest::Approx(15.0 * (1.0 + kPi / (16.0 * Lambda))).epsilon(1e-12));
  CHECK(plan.target.N == 16);
  CHECK(plan.target.parity == Parity::Odd);
  CHECK(plan.pulses[0].kind == PulseStep::Kind::Rotate);
  CHECK(plan.pulses[0].sign == -1);
}

TEST_CASE("scheme 2 roots") {
  const std::vector<Complex> m3 = scheme2_roots(3);
  REQUIRE(m3.size() == 3);
  CHECK(std::abs(m3[0] - Complex(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(m3[1] - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(m3[2] - Complex(0.0, 1.0)) < 1e-14);

  const std::vector<Complex> m1 = scheme2_roots(1);
  REQUIRE(m1.size() == 1);
  CHECK(std::abs(m1[0] - Complex(1.0, 0.0)) < 1e-14);

  for (int M = 1; M <= 8; ++M) {
    for (const Complex& z : scheme2_roots(M)) {
      Complex acc = 0.0;
      for (int k = 0; k <= M; ++k)
        acc += (((M - k) % 2 == 0) ? 1.0 : -1.0) * std::pow(z, k);
      CHECK(std::abs(acc) <= 1e-12);
    }
  }
}

TEST_CASE("first-cycle conditional probability") {
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const PulseSequence plan = scheme1_plan(1, kTwoPi);
    const RunResult res = run_sequence(plan, Complex(r, 0.0));
    REQUIRE(res.cycle_probs.size() == 1);
    const double expected = 0.5 * (1.0 + std::exp(-2.0 * r * r));
    CHECK(std::abs(res.cycle_probs[0] - expected) < 1e-9);
  }
}

TEST_CASE("frozen scheme-1 joint probability at M=4, r=3.6") {
  const PulseSequence plan = scheme1_plan(4, kTwoPi);
  const RunResult res = run_sequence(plan, Complex(3.6, 0.0));
  CHECK(std::abs(res.joint_prob - 0.07122626361907) < 1e-9);
  CHECK(std::abs(res.joint_prob - res.analytic_joint_prob) < 1e-8);
  CHECK(res.fidelity_to_target >= 1.0 - 1e-9);
}

TEST_CASE("success probability identities and frozen values") {
  CHECK(std::abs(success_probability(Scheme::S1, 3, 6.8) - 0.12851049) < 1e-6);
  for (int M = 1; M <= 5; ++M) {
    CHECK(success_probability(Scheme::S1, M, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double r2 : {0.5, 2.0, 6.8, 12.8}) {
      const double denom = std::pow(4.0, M);
      CHECK(success_probability(Scheme::S1, M, r2) ==
            doctest::Approx(lambda_norm(1 << M, Parity::Even, r2) / denom).epsilon(1e-12));
      CHECK(success_probability(Scheme::S2, M, r2) ==
            doctest::Approx(lambda_norm(M + 1, Parity::Even, r2) / denom).epsilon(1e-12));
      CHECK(success_probability(Scheme::S3, M, r2) ==
            doctest::Approx(lambda_norm(1 << M, Parity::Odd, r2) / denom).epsilon(1e-12));
    }
  }
}

TEST_CASE("literal per-cycle formulas") {
  // scheme-1 timing (M=2): eta^2 = 1/8, Omega = 2 pi, t1 = 2 us, t2 = 1 us
  const double eta = std::pow(2.0, -1.5);
  const double p1 = per_cycle_probability_s1(2.0, {2.0}, kTwoPi, eta);
  CHECK(std::abs(p1 - 0.5 * (1.0 + std::exp(-4.0))) < 1e-12);

  const double joint = per_cycle_probability_s1(2.0, {2.0, 1.0}, kTwoPi, eta);
  CHECK(std::abs(joint - 0.2264192347261196) < 1e-13);
  CHECK(std::abs(joint - lambda_norm(4, Parity::Even, 2.0) / 16.0) < 1e-12);
  // the published reduction
  CHECK(std::abs(joint - 0.25 * (1.0 + std::exp(-4.0) +
                                 2.0 * std::exp(-2.0) * std::cos(2.0))) < 1e-12);

  CHECK(per_cycle_probability_s1(0.0, {2.0}, kTwoPi, eta) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(per_cycle_probability_s1(1.0, {-1.0}, kTwoPi, eta), NonPositiveInput);
  CHECK_THROWS_AS(per_cycle_probability_s1(1.0, {1.0, 1.0, 1.0}, kTwoPi, eta),
                  std::invalid_argument);
}

TEST_CASE("generic single-cycle formula matches the simulator") {
  // Omega t1 deliberately not a multiple of 2 pi: phase terms must matter.
  LaserParams params;
  params.Omega = 10.0;
  params.eta = std::sqrt(kPi / 30.0);  // Omega_bar t1 = pi/3 at t1 = 1
  const double r = 1.0, t1 = 1.0;
  const int dim = choose_dim(r);
  IonState state = IonState::in_upper(coherent_state(Complex(r, 0.0), dim));
  state = kerr_evolve(state, t1, params);
  const double simulated = state.up.squared_norm();
  const double formula = per_cycle_probability_s1(r * r, {t1}, params.Omega, params.eta);
  CHECK(std::abs(simulated - formula) < 1e-9);
}

TEST_CASE("all three schemes reach their analytic targets") {
  const double Lambda = 0.2 * kPi;
  for (int M = 1; M <= 3; ++M) {
    const RunResult s1 = run_sequence(scheme1_plan(M, kTwoPi), Complex(2.0, 0.0));
    CHECK(s1.fidelity_to_target >= 1.0 - 1e-9);
    CHECK(std::abs(s1.joint_prob - s1.analytic_joint_prob) < 1e-8);

    const RunResult s2 = run_sequence(scheme2_plan(M, kTwoPi, Lambda), Complex(1.5, 0.0));
    CHECK(s2.fidelity_to_target >= 1.0 - 1e-9);
    CHECK(std::abs(s2.joint_prob - s2.analytic_joint_prob) < 1e-8);

    const RunResult s3 = run_sequence(scheme3_plan(M, kTwoPi, Lambda), Complex(2.0, 0.0));
    CHECK(s3.fidelity_to_target >= 1.0 - 1e-9);
    CHECK(std::abs(s3.joint_prob - s3.analytic_joint_prob) < 1e-8);
  }
}

TEST_CASE("scheme-2 final state is invariant under root permutation") {
  PulseSequence plan = scheme2_plan(3, kTwoPi, 0.2 * kPi);
  const RunResult base = run_sequence(plan, Complex(1.5, 0.0));
  // swap the first and last rotation durations (cycle order of the roots)
  std::swap(plan.pulses[0].duration, plan.pulses[6].duration);
  const RunResult permuted = run_sequence(plan, Complex(1.5, 0.0));
  const double overlap =
      std::norm(inner_product(base.final_motional, permuted.final_motional));
  CHECK(overlap >= 1.0 - 1e-9);
  CHECK(std::abs(base.joint_prob - permuted.joint_prob) < 1e-10);
}

TEST_CASE("total time accounting") {
  const PulseSequence plan = scheme1_plan(4, kTwoPi);
  const TotalTime with = total_time(plan, 0.2);
  CHECK(with.total == doctest::Approx(15.8).epsilon(1e-12));
  CHECK(with.overhead_fraction == doctest::Approx(0.8 / 15.8).epsilon(1e-12));
  CHECK(with.overhead_fraction < 0.10);

  const TotalTime without = total_time(plan, 0.0);
  CHECK(without.total == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(without.overhead_fraction == 0.0);

  const PulseSequence s3 = scheme3_plan(4, kTwoPi, 0.2 * kPi);
  CHECK(total_time(s3, 0.2).total == doctest::Approx(15.0 * 1.3125 + 0.8).epsilon(1e-12));

  CHECK_THROWS_AS(total_time(plan, -0.1), NonPositiveInput);
}
