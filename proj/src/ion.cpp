#include "circ/ion.hpp"

#include <cmath>

namespace circ {

namespace {

void require_phi_pi(const LaserParams& params) {
  if (std::abs(params.phi - std::numbers::pi) > 1e-12)
    throw std::invalid_argument("laser phase convention is phi = pi");
}

double ladder_weight(int n, int k) {
  // sqrt((n+k)! / n!)
  return std::exp(0.5 * (log_factorial(n + k) - log_factorial(n)));
}

}  // namespace

double lamb_dicke(double delta_k, double mass, double omega, double hbar) {
  if (delta_k <= 0.0 || mass <= 0.0 || omega <= 0.0 || hbar <= 0.0)
    throw NonPositiveInput("lamb_dicke: all inputs must be positive");
  return delta_k * std::sqrt(hbar / (2.0 * mass * omega));
}

Complex coupling_f(int n, int k, double eta) {
  if (n < 0 || k < 0) throw NonPositiveInput("coupling_f: n, k must be >= 0");
  if (eta == 0.0) return (k == 0) ? 1.0 : 0.0;
  double real_sum = 0.0;
  for (int l = 0; l <= n; ++l) {
    const double lmag = (2 * l + k) * std::log(eta) - log_factorial(l) -
                        log_factorial(l + k) + log_factorial(n) - log_factorial(n - l);
    real_sum += ((l % 2 == 0) ? 1.0 : -1.0) * std::exp(lmag);
  }
  // i^k carries the sideband phase; the l-sum itself is real.
  const Complex ik = std::polar(1.0, k * std::numbers::pi / 2.0);
  return std::exp(-0.5 * eta * eta) * real_sum * ik;
}

Eigen::MatrixXcd build_hamiltonian(HamiltonianKind kind, int sideband_k,
                                   const LaserParams& params, int dim,
                                   double detuning) {
  if (detuning != 0.0)
    throw UnsupportedDetuning("build_hamiltonian: only resonance (detuning 0) is modeled");
  require_phi_pi(params);
  const int k = (kind == HamiltonianKind::Red || kind == HamiltonianKind::Blue)
                    ? sideband_k
                    : 0;
  if (k < 0 || dim < k + 1)
    throw DimensionMismatch("build_hamiltonian: need dim >= sideband_k + 1");

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  const double Om = params.Omega;
  auto up = [&](int n) { return n; };
  auto down = [&](int n) { return dim + n; };

  switch (kind) {
    case HamiltonianKind::Carrier:
      for (int n = 0; n < dim; ++n) {
        const Complex f = coupling_f(n, 0, params.eta);  // real
        H(up(n), down(n)) = Om * f;
        H(down(n), up(n)) = Om * std::conj(f);
      }
      break;
    case HamiltonianKind::KerrApprox:
      for (int n = 0; n < dim; ++n) {
        const double f = Om * (1.0 - params.eta * params.eta * n);
        H(up(n), down(n)) = f;
        H(down(n), up(n)) = f;
      }
      break;
    case HamiltonianKind::Red:
      // couples |m+k, down> <-> |m, up>
      for (int m = 0; m + k < dim; ++m) {
        const Complex amp = Om * coupling_f(m, k, params.eta) * ladder_weight(m, k);
        H(up(m), down(m + k)) = amp;
        H(down(m + k), up(m)) = std::conj(amp);
      }
      break;
    case HamiltonianKind::Blue:
      // couples |n, down> <-> |n+k, up>
      for (int n = 0; n + k < dim; ++n) {
        const Complex amp = Om * coupling_f(n, k, params.eta) * ladder_weight(n, k);
        H(up(n + k), down(n)) = amp;
        H(down(n), up(n + k)) = std::conj(amp);
      }
      break;
  }
  return H;
}

IonState kerr_evolve(const IonState& state, double t, const LaserParams& params) {
  require_phi_pi(params);
  const int dim = state.dim();
  const double Om = params.Omega;
  const double Omb = params.omega_bar();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd ux = (state.up.amps() + state.down.amps()) * inv_sqrt2;
  Eigen::VectorXcd dx = (state.up.amps() - state.down.amps()) * inv_sqrt2;
  for (int n = 0; n < dim; ++n) {
    ux(n) *= std::polar(1.0, -Om * t + Omb * t * n);
    dx(n) *= std::polar(1.0, Om * t - Omb * t * n);
  }
  return IonState(FockVector((ux + dx) * inv_sqrt2), FockVector((ux - dx) * inv_sqrt2));
}

IonState rotate_pulse(const IonState& state, double t, double Lambda, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("rotate_pulse: sign must be +1 or -1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd ux = (state.up.amps() + state.down.amps()) * inv_sqrt2;
  Eigen::VectorXcd dx = (state.up.amps() - state.down.amps()) * inv_sqrt2;
  ux *= std::polar(1.0, -sign * Lambda * t);
  dx *= std::polar(1.0, sign * Lambda * t);
  return IonState(FockVector((ux + dx) * inv_sqrt2), FockVector((ux - dx) * inv_sqrt2));
}

MeasureResult measure_up(const IonState& state) {
  const double prob = state.up.squared_norm();
  if (prob < 1e-15)
    throw ZeroProbabilityBranch("measure_up: no-fluorescence branch has zero weight");
  FockVector post_up(state.up.amps() / std::sqrt(prob));
  return MeasureResult{prob, IonState(std::move(post_up), FockVector(state.dim()))};
}

double kerr_validity(const FockVector& v, double eta) {
  if (!v.is_normalized()) throw NotNormalized("kerr_validity: vector not normalized");
  const double mean = number_moment(v, 1);
  if (mean <= 1e-12) return eta * eta / 4.0;
  const double var = number_moment(v, 2) - mean * mean;
  const double q = (var - mean) / mean;
  return eta * eta * (q + mean + 1.0) / 4.0;
}

IonState evolve_dense(const IonState& state, const Eigen::MatrixXcd& H, double t) {
  const int n = static_cast<int>(H.rows());
  if (H.cols() != n || n != 2 * state.dim())
    throw DimensionMismatch("evolve_dense: H must be 2*dim x 2*dim");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NotHermitian("evolve_dense: H is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd psi(n);
  psi.head(state.dim()) = state.up.amps();
  psi.tail(state.dim()) = state.down.amps();
  Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi;
  for (int i = 0; i < n; ++i) coeffs(i) *= std::polar(1.0, -es.eigenvalues()(i) * t);
  psi = es.eigenvectors() * coeffs;
  return IonState(FockVector(psi.head(state.dim()).eval()),
                  FockVector(psi.tail(state.dim()).eval()));
}

}  // namespace circ
