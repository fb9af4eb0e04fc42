#pragma once

// Matrix representation of linear maps on d-dimensional operators, the
// complete dephasing projector, and the population/coherence block split.
//
// Coordinate convention (used by every module and by all serialized output):
// an operator X is expanded in the matrix units |i><j| of the incoherent
// basis, populations first.  Coordinate k < d is <i|U^† X U|i> with i = k;
// the remaining d^2-d coordinates are the coherences <i|U^† X U|j>, i != j,
// with the ordered pairs (i,j) sorted lexicographically.  In these
// coordinates the dephasing map is the 0/1 diagonal projector onto the first
// d entries, so the block split is pure index slicing.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace ncgd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest singular value; the zero-test metric everywhere in this library.
inline double spectral_norm(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  return A.jacobiSvd().singularValues()(0);
}

inline int coherence_dim(int d) { return d * d - d; }

/// Flat coordinate of the matrix unit |i><j|, populations first.
inline int coord_index(int i, int j, int d) {
  if (i == j) return i;
  return d + i * (d - 1) + (j < i ? j : j - 1);
}

/// Inverse of coord_index.
inline std::pair<int, int> coord_pair(int k, int d) {
  if (k < d) return {k, k};
  const int m = k - d;
  const int i = m / (d - 1);
  const int r = m % (d - 1);
  return {i, r < i ? r : r + 1};
}

struct IncoherentBasis {
  int d = 0;
  Matrix U;  // columns are the incoherent basis vectors |i>

  static IncoherentBasis computational(int d) {
    if (d < 2) throw std::invalid_argument("incoherent basis needs d >= 2");
    return {d, Matrix::Identity(d, d)};
  }

  static IncoherentBasis from_unitary(Matrix U, double tol = 1e-10) {
    const int d = static_cast<int>(U.rows());
    if (d < 2 || U.cols() != d)
      throw std::invalid_argument("incoherent basis must be square, d >= 2");
    const double defect =
        (U.adjoint() * U - Matrix::Identity(d, d)).norm();
    if (defect > tol * d)
      throw std::invalid_argument("incoherent basis matrix is not unitary (defect " +
                                  std::to_string(defect) + ")");
    return {d, std::move(U)};
  }
};

struct Superoperator {
  IncoherentBasis basis;
  Matrix M;  // d^2 x d^2, population-first coordinates

  int dim() const { return basis.d; }
};

struct BlockSplit {
  Matrix pp, pc, cp, cc;
};

inline Vector vectorize(const Matrix& op, const IncoherentBasis& b) {
  const int d = b.d;
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("vectorize: operator is not d x d");
  const Matrix t = b.U.adjoint() * op * b.U;
  Vector v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(coord_index(i, j, d)) = t(i, j);
  return v;
}

inline Matrix unvectorize(const Vector& v, const IncoherentBasis& b) {
  const int d = b.d;
  if (v.size() != d * d)
    throw std::invalid_argument("unvectorize: coordinate vector is not length d^2");
  Matrix t(d, d);
  for (int k = 0; k < d * d; ++k) {
    const auto [i, j] = coord_pair(k, d);
    t(i, j) = v(k);
  }
  return b.U * t * b.U.adjoint();
}

/// Projector onto the population coordinates (complete dephasing).
inline Matrix dephasing_matrix(int d) {
  Matrix D = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) D(i, i) = 1.0;
  return D;
}

inline Superoperator dephasing_superop(const IncoherentBasis& b) {
  return {b, dephasing_matrix(b.d)};
}

inline BlockSplit block_split(const Superoperator& S) {
  const int d = S.dim();
  const int c = coherence_dim(d);
  if (S.M.rows() != d * d || S.M.cols() != d * d)
    throw std::invalid_argument("block_split: superoperator matrix is not d^2 x d^2");
  return {S.M.topLeftCorner(d, d), S.M.topRightCorner(d, c),
          S.M.bottomLeftCorner(c, d), S.M.bottomRightCorner(c, c)};
}

inline Matrix reassemble(const BlockSplit& B) {
  const int d = static_cast<int>(B.pp.rows());
  const int c = static_cast<int>(B.cc.rows());
  Matrix M(d + c, d + c);
  M << B.pp, B.pc, B.cp, B.cc;
  return M;
}

/// Superoperator of an arbitrary linear map, built column by column.
template <typename MapFn>
Superoperator superop_from_map(MapFn&& map, const IncoherentBasis& b) {
  const int d = b.d;
  Matrix M(d * d, d * d);
  for (int k = 0; k < d * d; ++k) {
    const auto [i, j] = coord_pair(k, d);
    const Matrix unit = b.U.col(i) * b.U.col(j).adjoint();
    M.col(k) = vectorize(map(unit), b);
  }
  return {b, std::move(M)};
}

// --- qubit Pauli coordinates -------------------------------------------------

/// Pauli operators normalized so tr(s_i s_j) = delta_ij (s_i = pauli_i/sqrt(2)).
inline const std::array<Eigen::Matrix2cd, 4>& normalized_paulis() {
  static const std::array<Eigen::Matrix2cd, 4> s = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex I(0, 1);
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] << r, 0, 0, r;
    p[1] << 0, r, r, 0;
    p[2] << 0, -r * I, r * I, 0;
    p[3] << r, 0, 0, -r;
    return p;
  }();
  return s;
}

/// Pauli orderings that keep the population/coherence split aligned when the
/// incoherent basis diagonalizes sigma_3 (computational) or sigma_1 (|+->).
inline constexpr std::array<int, 4> pauli_order_sigma3_incoherent{0, 3, 1, 2};
inline constexpr std::array<int, 4> pauli_order_sigma1_incoherent{0, 1, 2, 3};

/// Unitary change of coordinates W with W[k,m] = tr(s_order[k]^† E_m), where
/// E_m runs over the matrix units of the incoherent basis.
inline Matrix pauli_transform(const IncoherentBasis& b,
                              const std::array<int, 4>& order) {
  if (b.d != 2) throw std::invalid_argument("pauli coordinates require d = 2");
  const auto& s = normalized_paulis();
  Matrix W(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m) {
      const auto [i, j] = coord_pair(m, 2);
      const Matrix unit = b.U.col(i) * b.U.col(j).adjoint();
      W(k, m) = (s[order[k]].adjoint() * unit).trace();
    }
  return W;
}

/// Superoperator matrix in the declared normalized-Pauli coordinate ordering.
inline Matrix to_pauli_coordinates(const Superoperator& S,
                                   const std::array<int, 4>& order) {
  const Matrix W = pauli_transform(S.basis, order);
  return W * S.M * W.adjoint();
}

inline Superoperator from_pauli_coordinates(const Matrix& P,
                                            const IncoherentBasis& b,
                                            const std::array<int, 4>& order) {
  if (P.rows() != 4 || P.cols() != 4)
    throw std::invalid_argument("pauli coordinate matrix must be 4 x 4");
  const Matrix W = pauli_transform(b, order);
  return {b, W.adjoint() * P * W};
}

}  // namespace ncgd
