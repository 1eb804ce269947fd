#ifndef CIRC_FOCK_HPP
#define CIRC_FOCK_HPP

#include <complex>

#include <Eigen/Dense>

#include "circ/errors.hpp"

namespace circ {

using Complex = std::complex<double>;

// Central amplitude tolerances: single knob for the whole suite.
inline constexpr double kNormTol = 1e-10;
inline constexpr double kOverlapTol = 1e-8;

// Truncation control for the number basis.  tail_tol is the Poisson
// probability mass allowed beyond the last kept level.
struct TruncationPolicy {
  double tail_tol = 1e-12;
  int min_dim = 16;
};

// Complex amplitudes over the truncated number basis n = 0..dim-1.
class FockVector {
 public:
  explicit FockVector(int dim) : amps_(Eigen::VectorXcd::Zero(dim)) {
    if (dim < 1) throw DimensionMismatch("FockVector: dim must be >= 1");
  }
  explicit FockVector(Eigen::VectorXcd amps) : amps_(std::move(amps)) {
    if (amps_.size() < 1) throw DimensionMismatch("FockVector: dim must be >= 1");
  }

  int dim() const { return static_cast<int>(amps_.size()); }
  Complex& operator[](int n) { return amps_(n); }
  const Complex& operator[](int n) const { return amps_(n); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }

  double squared_norm() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }
  FockVector normalized() const {
    double n = norm();
    if (n <= 0.0) throw DegenerateState("cannot normalize the zero vector");
    return FockVector(amps_ / n);
  }

 private:
  Eigen::VectorXcd amps_;
};

// log(n!), exact for the whole double range of n.
double log_factorial(int n);

// Smallest dim (>= policy.min_dim) such that a coherent state of amplitude
// radius r has Poisson tail mass beyond dim-1 below policy.tail_tol.
int choose_dim(double r, const TruncationPolicy& policy = {});

// Poisson tail mass sum_{n >= dim} e^{-r^2} r^{2n} / n!.
double coherent_tail_mass(double r, int dim);

// amps[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!).  Renormalized over the
// truncated space when the tail mass is below tail_tol, otherwise returned
// raw (tail reported through tail_out).  Throws TruncationTooSmall when the
// tail mass reaches 1e-6.
FockVector coherent_state(Complex alpha, int dim, double tail_tol = 1e-12,
                          double* tail_out = nullptr);

Complex inner_product(const FockVector& u, const FockVector& v);

// <n^k> of a normalized vector.
double number_moment(const FockVector& v, int k);

// (Var(n) - <n>) / <n>.
double mandel_q(const FockVector& v);

// a^N applied to v, unnormalized: amps'[n] = sqrt((n+N)!/n!) amps[n+N].
FockVector apply_annihilation_power(const FockVector& v, int N);

}  // namespace circ

#endif
