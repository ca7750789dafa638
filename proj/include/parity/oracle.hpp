#pragma once

// Brute-force reference on a fixed-photon-number two-mode Fock space: generators as dense
// matrices, evolution by Hermitian eigendecomposition. No Wigner-d machinery.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "parity/state.hpp"

namespace parity::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxPhotons = 12;

/// Basis |n - k>_a |k>_b for k = 0..n, i.e. (n,0), (n-1,1), ..., (0,n). Index k equals the
/// Schwinger index of |j, mu> with mu = j - k.
struct FockBasis {
  int n_total;
  int dimension() const { return n_total + 1; }
  int n_a(int k) const { return n_total - k; }
  int n_b(int k) const { return k; }
};

struct DenseOperator {
  Matrix matrix;
  std::string label;
};

struct Generators {
  FockBasis basis;
  DenseOperator jx, jy, jz, parity;
};

inline void require_oracle_scale(int n_total) {
  if (n_total < 0 || n_total > kMaxPhotons) {
    throw DomainError("oracle supports 0 <= N <= " + std::to_string(kMaxPhotons) + ", got " +
                      std::to_string(n_total));
  }
}

inline Generators build_generators(int n_total) {
  require_oracle_scale(n_total);
  const FockBasis basis{n_total};
  const int dim = basis.dimension();
  // a^dagger b: |n_a, n_b> -> sqrt((n_a + 1) n_b) |n_a + 1, n_b - 1>, i.e. k -> k - 1.
  Matrix raise = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    raise(k - 1, k) = std::sqrt(static_cast<double>((basis.n_a(k) + 1) * basis.n_b(k)));
  }
  const Matrix lower = raise.adjoint();
  Matrix jz = Matrix::Zero(dim, dim);
  Matrix parity = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    jz(k, k) = 0.5 * (basis.n_a(k) - basis.n_b(k));
    parity(k, k) = basis.n_b(k) % 2 == 0 ? 1.0 : -1.0;
  }
  const std::complex<double> two_i{0.0, 2.0};
  return {basis,
          {0.5 * (raise + lower), "Jx"},
          {(raise - lower) / two_i, "Jy"},
          {jz, "Jz"},
          {parity, "Parity"}};
}

/// exp(-i angle G) for Hermitian G.
inline Matrix unitary(const DenseOperator& generator, double angle) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(generator.matrix);
  if (eig.info() != Eigen::Success) throw ConsistencyError("eigendecomposition of " + generator.label + " failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Vector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -angle * lambda(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

inline Vector evolve(const Vector& state_vector, const DenseOperator& generator, double angle) {
  if (state_vector.size() != generator.matrix.rows()) {
    std::ostringstream msg;
    msg << "vector of size " << state_vector.size() << " does not match " << generator.label << " of size "
        << generator.matrix.rows();
    throw DomainError(msg.str());
  }
  return unitary(generator, angle) * state_vector;
}

inline Vector to_fock_vector(const Amplitudes& amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return v;
}

/// Parity expectation by direct evolution. At-input blocks: exp(-i phi J_y), then (-1)^{n_b}.
/// Inside blocks: phase shifter exp(-i phi J_z), pi/2 bias exp(-i pi/2 J_z), second beam
/// splitter exp(+i pi/2 J_x), then (-1)^{n_b}.
inline double bruteforce_parity_expectation(const TwoModeState& state, double phi) {
  std::complex<double> total{};
  for (const auto& [two_j, amps] : state.components()) {
    const Generators g = build_generators(two_j);
    Vector v = to_fock_vector(amps);
    if (state.frame() == Frame::AtInput) {
      v = evolve(v, g.jy, phi);
    } else {
      v = evolve(v, g.jz, phi + 0.5 * std::numbers::pi);
      v = evolve(v, g.jx, -0.5 * std::numbers::pi);
    }
    total += v.dot(g.parity.matrix * v);  // dot() conjugates its left operand
  }
  if (!(std::abs(total.imag()) < 1e-12)) {
    throw ConsistencyError("oracle expectation has imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

}  // namespace parity::oracle
