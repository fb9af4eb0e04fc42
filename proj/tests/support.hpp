#pragma once

// Shared helpers for the test suite: seeded random draws and generator
// families with known certification verdicts.

#include <random>
#include <vector>

#include <ncgd/lindblad.hpp>
#include <ncgd/superop.hpp>

namespace ncgd::test {

inline Matrix random_complex(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = Complex(n(rng), n(rng));
  return A;
}

inline Matrix random_hermitian(int d, std::mt19937& rng) {
  const Matrix A = random_complex(d, d, rng);
  return 0.5 * (A + A.adjoint());
}

inline Matrix random_unitary(int d, std::mt19937& rng) {
  const Matrix A = random_complex(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex r = R(i, i);
    Q.col(i) *= (std::abs(r) > 0) ? r / std::abs(r) : 1.0;
  }
  return Q;
}

inline Matrix random_psd(int d, std::mt19937& rng) {
  const Matrix A = random_complex(d, d, rng);
  return A * A.adjoint();
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// --- generator families with known verdicts ----------------------------------

/// Generic validated generator; almost surely CGD.  Alternates between a
/// completely positive jump form and an indefinite rate-matrix form.
inline GeneratorSpec random_generic_spec(int d, std::mt19937& rng) {
  GeneratorSpec spec{HDSpec{}, IncoherentBasis::computational(d)};
  if (rng() % 2 == 0) {
    JumpSpec js{random_hermitian(d, rng), {}};
    const int nj = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < nj; ++k) js.J.push_back(0.7 * random_complex(d, d, rng));
    spec.form = js;
  } else {
    spec.form = HDSpec{random_hermitian(d, rng), random_hermitian(d * d - 1, rng), {}};
  }
  return spec;
}

/// Random jump-form generator: the rate matrix is a Gram matrix, so the
/// dynamics is completely positive by construction.
inline GeneratorSpec random_gksl_spec(int d, std::mt19937& rng) {
  JumpSpec js{random_hermitian(d, rng), {}};
  const int nj = 1 + static_cast<int>(rng() % 2);
  for (int k = 0; k < nj; ++k) js.J.push_back(0.7 * random_complex(d, d, rng));
  return {js, IncoherentBasis::computational(d)};
}

/// Diagonal Hamiltonian and diagonal jumps in the incoherent basis: the
/// generator maps populations to populations and coherences to coherences,
/// so it commutes with dephasing and is NCGD.
inline GeneratorSpec random_dephasing_like_spec(int d, std::mt19937& rng) {
  Matrix H = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) H(i, i) = uniform(rng, -2.0, 2.0);
  JumpSpec js{H, {}};
  const int nj = 1 + static_cast<int>(rng() % 2);
  for (int k = 0; k < nj; ++k) {
    Matrix J = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      J(i, i) = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    js.J.push_back(J);
  }
  return {js, IncoherentBasis::computational(d)};
}

/// Qubit coefficient matrix with random Hamiltonian row and a rank-one
/// dissipator tuned so coherence never reaches the populations (pc = 0).
inline Matrix non_activating_coeffs(double im01, double im02, double im03) {
  Eigen::Vector3d r(im02, -im01, 1.0);
  const Eigen::Matrix3d diss = r * r.transpose();
  Matrix L = Matrix::Zero(4, 4);
  L(0, 1) = Complex(0, im01);
  L(0, 2) = Complex(0, im02);
  L(0, 3) = Complex(0, im03);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L(1 + i, 1 + j) = diss(i, j);
  L(1, 0) = std::conj(L(0, 1));
  L(2, 0) = std::conj(L(0, 2));
  L(3, 0) = std::conj(L(0, 3));
  return L;
}

/// Rank-one dissipator tuned so populations never source coherence (cp = 0).
inline Matrix non_generating_coeffs(double im01, double im02, double im03) {
  Eigen::Vector3d s(-im02, im01, 1.0);
  const Eigen::Matrix3d diss = s * s.transpose();
  Matrix L = Matrix::Zero(4, 4);
  L(0, 1) = Complex(0, im01);
  L(0, 2) = Complex(0, im02);
  L(0, 3) = Complex(0, im03);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L(1 + i, 1 + j) = diss(i, j);
  L(1, 0) = std::conj(L(0, 1));
  L(2, 0) = std::conj(L(0, 2));
  L(3, 0) = std::conj(L(0, 3));
  return L;
}

/// Qubit coefficient matrix whose pc and cp blocks are both nonzero yet whose
/// products pc·cp and pc·cc·cp vanish exactly: coherence is generated in the
/// subspace orthogonal to the one that is detected.
inline Matrix random_orthogonal_ncgd_coeffs(std::mt19937& rng) {
  while (true) {
    const double rho = uniform(rng, 0.5, 2.0);
    const double th = uniform(rng, 0.0, 2 * M_PI), ph = uniform(rng, 0.0, 2 * M_PI);
    const double a = rho * std::cos(th), c = rho * std::sin(th);
    const double b = rho * std::cos(ph), e = rho * std::sin(ph);
    if (std::abs(c + e) < 0.2 || std::abs(b - a) < 0.2) continue;
    const double g = uniform(rng, -2.0, 2.0);
    const double f = g * (a - b) / (c + e);
    const double h = uniform(rng, -2.0, 2.0), k = uniform(rng, -2.0, 2.0);
    const double L22 = uniform(rng, 0.1, 2.0), L33 = uniform(rng, 0.1, 2.0);
    const double L11 =
        L22 + (b - a) * (h - k) / (e + c) + (e + c) * (h + k) / (b - a);

    Matrix L = Matrix::Zero(4, 4);
    L(0, 1) = Complex(0, e);
    L(0, 2) = Complex(0, b);
    L(0, 3) = Complex(0, h);
    L(1, 1) = L11;
    L(2, 2) = L22;
    L(3, 3) = L33;
    L(1, 2) = Complex(k, uniform(rng, -1.0, 1.0));
    L(1, 3) = Complex(a, f);
    L(2, 3) = Complex(c, g);
    L(1, 0) = std::conj(L(0, 1));
    L(2, 0) = std::conj(L(0, 2));
    L(3, 0) = std::conj(L(0, 3));
    L(2, 1) = std::conj(L(1, 2));
    L(3, 1) = std::conj(L(1, 3));
    L(3, 2) = std::conj(L(2, 3));
    return L;
  }
}

/// Validated generator certified NCGD, drawn from the families above.
inline GeneratorSpec random_ncgd_spec(int d, std::mt19937& rng) {
  if (d != 2) return random_dephasing_like_spec(d, rng);
  switch (rng() % 4) {
    case 0:
      return random_dephasing_like_spec(2, rng);
    case 1:
      return {QubitPauliSpec{non_activating_coeffs(uniform(rng, -1, 1),
                                                   uniform(rng, -1, 1),
                                                   uniform(rng, -1, 1))},
              IncoherentBasis::computational(2)};
    case 2:
      return {QubitPauliSpec{non_generating_coeffs(uniform(rng, -1, 1),
                                                   uniform(rng, -1, 1),
                                                   uniform(rng, -1, 1))},
              IncoherentBasis::computational(2)};
    default:
      return {QubitPauliSpec{random_orthogonal_ncgd_coeffs(rng)},
              IncoherentBasis::computational(2)};
  }
}

}  // namespace ncgd::test
