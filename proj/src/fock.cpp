#include "circ/fock.hpp"

#include <cmath>

namespace circ {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

int choose_dim(double r, const TruncationPolicy& policy) {
  if (r < 0.0) throw NonPositiveInput("choose_dim: r must be >= 0");
  const double mean = r * r;
  if (mean == 0.0) return policy.min_dim;
  // Walk the Poisson pmf by recurrence until the remaining mass drops
  // below tail_tol.
  double p = std::exp(-mean);
  double cum = p;
  int n = 0;
  while (n + 1 < policy.min_dim || 1.0 - cum >= policy.tail_tol) {
    ++n;
    p *= mean / n;
    cum += p;
    if (n > 100000) break;  // unreachable for physical radii
  }
  return std::max(n + 1, policy.min_dim);
}

double coherent_tail_mass(double r, int dim) {
  const double mean = r * r;
  if (mean == 0.0) return 0.0;
  double tail = 0.0;
  double lp = -mean + dim * std::log(mean) - log_factorial(dim);
  double p = std::exp(lp);
  int n = dim;
  while (true) {
    tail += p;
    ++n;
    p *= mean / n;
    if (p < tail * 1e-18 && n > dim + 4) break;
    if (n > dim + 100000) break;
  }
  return tail;
}

FockVector coherent_state(Complex alpha, int dim, double tail_tol, double* tail_out) {
  const double r = std::abs(alpha);
  const double arg = std::arg(alpha);
  Eigen::VectorXcd amps(dim);
  for (int n = 0; n < dim; ++n) {
    if (r == 0.0) {
      amps(n) = (n == 0) ? 1.0 : 0.0;
      continue;
    }
    const double lm = -0.5 * r * r + n * std::log(r) - 0.5 * log_factorial(n);
    amps(n) = std::polar(std::exp(lm), n * arg);
  }
  const double tail = coherent_tail_mass(r, dim);
  if (tail_out) *tail_out = tail;
  if (tail >= 1e-6) {
    throw TruncationTooSmall("coherent_state: tail mass " + std::to_string(tail) +
                             " at dim " + std::to_string(dim));
  }
  FockVector v(std::move(amps));
  if (tail < tail_tol) return v.normalized();
  return v;
}

Complex inner_product(const FockVector& u, const FockVector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("inner_product: dim mismatch");
  return u.amps().dot(v.amps());
}

double number_moment(const FockVector& v, int k) {
  if (k < 0) throw NonPositiveInput("number_moment: k must be >= 0");
  if (!v.is_normalized()) throw NotNormalized("number_moment: vector not normalized");
  if (k == 0) return 1.0;
  double s = 0.0;
  for (int n = 1; n < v.dim(); ++n) s += std::pow(static_cast<double>(n), k) * std::norm(v[n]);
  return s;
}

double mandel_q(const FockVector& v) {
  const double mean = number_moment(v, 1);
  if (mean <= 1e-300) throw ZeroMeanOccupation("mandel_q: <n> = 0");
  const double var = number_moment(v, 2) - mean * mean;
  return (var - mean) / mean;
}

FockVector apply_annihilation_power(const FockVector& v, int N) {
  if (N < 0) throw NonPositiveInput("apply_annihilation_power: N must be >= 0");
  FockVector out(v.dim());
  for (int n = 0; n + N < v.dim(); ++n) {
    const double lw = 0.5 * (log_factorial(n + N) - log_factorial(n));
    out[n] = std::exp(lw) * v[n + N];
  }
  return out;
}

}  // namespace circ
