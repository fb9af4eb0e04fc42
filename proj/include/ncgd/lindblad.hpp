#pragma once

// Dynamical generators in three input forms and their superoperator
// construction:
//   * HD        — Hamiltonian plus rate matrix D over a traceless orthonormal
//                 operator basis {F_i}:  rho -> -i[H,rho]
//                 + sum_ij D_ij (F_i rho F_j^† - {F_j^† F_i, rho}/2)
//   * Jumps     — Hamiltonian plus jump operators:  rho -> -i[H,rho]
//                 + sum_k (J_k rho J_k^† - {J_k^† J_k, rho}/2)
//   * QubitPauli— 4x4 Hermitian coefficient matrix over the normalized Pauli
//                 operators:  rho -> (1/2) sum_ij L_ij ([s_i rho, s_j]
//                 + [s_i, rho s_j]).  Row/column 0 carries the Hamiltonian
//                 through its imaginary parts (H = (1/sqrt2) sum_j Im L_0j s_j,
//                 the real parts of L_0j provably contribute nothing); the
//                 lower-right 3x3 block is the rate matrix.
//
// Rate-matrix conventions: the implicit basis completion F_{d^2} = 1/sqrt(d)
// is excluded from D's index range.  A jump form is converted by splitting
// each J_k into its traceless part A_k plus the identity component, which
// shifts the Hamiltonian by (i/(2d)) (tr(J_k)^* A_k - tr(J_k) A_k^†).

#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "superop.hpp"

namespace ncgd {

/// Generalized Gell-Mann basis, normalized to tr(F_i^† F_j) = delta_ij:
/// symmetric and antisymmetric pair operators for i < j, then the d-1
/// diagonal operators.  For d = 2 this is exactly (s_1, s_2, s_3).
inline std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("operator basis needs d >= 2");
  std::vector<Matrix> F;
  F.reserve(d * d - 1);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex I(0, 1);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix sym = Matrix::Zero(d, d), asym = Matrix::Zero(d, d);
      sym(i, j) = sym(j, i) = r;
      asym(i, j) = -I * r;
      asym(j, i) = I * r;
      F.push_back(sym);
      F.push_back(asym);
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int k = 0; k < l; ++k) diag(k, k) = s;
    diag(l, l) = -l * s;
    F.push_back(diag);
  }
  return F;
}

struct HDSpec {
  Matrix H;
  Matrix D;               // (d^2-1) x (d^2-1) Hermitian
  std::vector<Matrix> F;  // empty -> gell_mann_basis(d)
};

struct JumpSpec {
  Matrix H;
  std::vector<Matrix> J;
};

struct QubitPauliSpec {
  Matrix L;  // 4 x 4 Hermitian
};

struct GeneratorSpec {
  std::variant<HDSpec, JumpSpec, QubitPauliSpec> form;
  IncoherentBasis basis;

  int dim() const { return basis.d; }
};

namespace detail {

inline void require_hermitian(const Matrix& A, const std::string& name,
                              double tol = 1e-10) {
  if (A.rows() != A.cols())
    throw std::invalid_argument(name + " must be square");
  const double defect = (A - A.adjoint()).norm();
  if (defect > tol * (1.0 + A.norm()))
    throw std::invalid_argument(name + " is not Hermitian (defect " +
                                std::to_string(defect) + ")");
}

inline void require_operator_basis(const std::vector<Matrix>& F, int d,
                                   double tol = 1e-10) {
  if (static_cast<int>(F.size()) != d * d - 1)
    throw std::invalid_argument("operator basis must have d^2-1 elements");
  for (size_t a = 0; a < F.size(); ++a) {
    if (F[a].rows() != d || F[a].cols() != d)
      throw std::invalid_argument("operator basis element is not d x d");
    if (std::abs(F[a].trace()) > tol)
      throw std::invalid_argument("operator basis element is not traceless");
    for (size_t b = a; b < F.size(); ++b) {
      const Complex g = (F[a].adjoint() * F[b]).trace();
      const Complex want = a == b ? 1.0 : 0.0;
      if (std::abs(g - want) > tol)
        throw std::invalid_argument("operator basis is not orthonormal");
    }
  }
}

}  // namespace detail

inline Superoperator build_from_HD(const HDSpec& spec, const IncoherentBasis& basis) {
  const int d = basis.d;
  if (spec.H.rows() != d || spec.H.cols() != d)
    throw std::invalid_argument("H must be d x d");
  detail::require_hermitian(spec.H, "H");
  detail::require_hermitian(spec.D, "D");
  const std::vector<Matrix> F = spec.F.empty() ? gell_mann_basis(d) : spec.F;
  detail::require_operator_basis(F, d);
  const int n = static_cast<int>(F.size());
  if (spec.D.rows() != n)
    throw std::invalid_argument("D must be (d^2-1) x (d^2-1)");

  return superop_from_map(
      [&](const Matrix& rho) {
        Matrix out = Complex(0, -1) * (spec.H * rho - rho * spec.H);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (spec.D(i, j) == Complex(0, 0)) continue;
            const Matrix FjFi = F[j].adjoint() * F[i];
            out += spec.D(i, j) *
                   (F[i] * rho * F[j].adjoint() - 0.5 * (FjFi * rho + rho * FjFi));
          }
        return out;
      },
      basis);
}

inline Superoperator build_from_jumps(const JumpSpec& spec, const IncoherentBasis& basis) {
  const int d = basis.d;
  if (spec.H.rows() != d || spec.H.cols() != d)
    throw std::invalid_argument("H must be d x d");
  detail::require_hermitian(spec.H, "H");
  for (const Matrix& J : spec.J)
    if (J.rows() != d || J.cols() != d)
      throw std::invalid_argument("jump operator is not d x d");

  return superop_from_map(
      [&](const Matrix& rho) {
        Matrix out = Complex(0, -1) * (spec.H * rho - rho * spec.H);
        for (const Matrix& J : spec.J) {
          const Matrix JJ = J.adjoint() * J;
          out += J * rho * J.adjoint() - 0.5 * (JJ * rho + rho * JJ);
        }
        return out;
      },
      basis);
}

inline Superoperator build_qubit_pauli(const QubitPauliSpec& spec,
                                       const IncoherentBasis& basis) {
  if (basis.d != 2)
    throw std::invalid_argument("qubit coefficient form requires d = 2");
  if (spec.L.rows() != 4 || spec.L.cols() != 4)
    throw std::invalid_argument("coefficient matrix must be 4 x 4");
  detail::require_hermitian(spec.L, "coefficient matrix");
  const auto& s = normalized_paulis();

  return superop_from_map(
      [&](const Matrix& rho) {
        Matrix out = Matrix::Zero(2, 2);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            if (spec.L(i, j) == Complex(0, 0)) continue;
            const Matrix a = s[i] * rho;
            const Matrix b = rho * s[j];
            out += 0.5 * spec.L(i, j) *
                   ((a * s[j] - s[j] * a) + (s[i] * b - b * s[i]));
          }
        return out;
      },
      basis);
}

inline Superoperator build(const GeneratorSpec& spec) {
  return std::visit(
      [&](const auto& form) -> Superoperator {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, HDSpec>)
          return build_from_HD(form, spec.basis);
        else if constexpr (std::is_same_v<T, JumpSpec>)
          return build_from_jumps(form, spec.basis);
        else
          return build_qubit_pauli(form, spec.basis);
      },
      spec.form);
}

/// Equivalent HD presentation of a jump form (default operator basis):
/// D assembled from the traceless jump components, identity components folded
/// into the Hamiltonian.
inline HDSpec jumps_to_hd(const JumpSpec& spec, int d) {
  const std::vector<Matrix> F = gell_mann_basis(d);
  const int n = static_cast<int>(F.size());
  Matrix H = spec.H;
  Matrix C = Matrix::Zero(n, static_cast<int>(spec.J.size()));
  for (size_t k = 0; k < spec.J.size(); ++k) {
    const Complex tr = spec.J[k].trace();
    const Matrix A = spec.J[k] - (tr / static_cast<double>(d)) * Matrix::Identity(d, d);
    H += (Complex(0, 1) / (2.0 * d)) * (std::conj(tr) * A - tr * A.adjoint());
    for (int i = 0; i < n; ++i) C(i, static_cast<int>(k)) = (F[i].adjoint() * A).trace();
  }
  return {std::move(H), C * C.adjoint(), {}};
}

// --- qubit closed forms ------------------------------------------------------

/// The four 2x2 blocks of the qubit coefficient-form generator in Pauli
/// coordinates with incoherent pair (s_0, s_3) and coherent pair (s_1, s_2),
/// written directly in terms of the coefficient matrix entries.
inline BlockSplit qubit_blocks_closed_form(const Matrix& L) {
  if (L.rows() != 4 || L.cols() != 4)
    throw std::invalid_argument("coefficient matrix must be 4 x 4");
  detail::require_hermitian(L, "coefficient matrix");
  const auto re = [&](int i, int j) { return L(i, j).real(); };
  const auto im = [&](int i, int j) { return L(i, j).imag(); };

  Matrix pp(2, 2), pc(2, 2), cp(2, 2), cc(2, 2);
  pp << 0, 0,
        -2 * im(1, 2), -(re(1, 1) + re(2, 2));
  pc << 0, 0,
        re(1, 3) - im(0, 2), re(2, 3) + im(0, 1);
  cp << -2 * im(2, 3), re(1, 3) + im(0, 2),
        2 * im(1, 3), re(2, 3) - im(0, 1);
  cc << -(re(2, 2) + re(3, 3)), -(im(0, 3) - re(1, 2)),
        re(1, 2) + im(0, 3), -(re(1, 1) + re(3, 3));
  return {pp, pc, cp, cc};
}

// --- validation and rate-matrix queries --------------------------------------

struct ValidationReport {
  double trace_residual = 0.0;
  double hermiticity_residual = 0.0;
  bool trace_preserving = false;
  bool hermiticity_preserving = false;

  bool ok() const { return trace_preserving && hermiticity_preserving; }
};

/// Trace preservation: the trace functional is the sum of the population
/// coordinates, so the sum of the first d rows must vanish.  Hermiticity
/// preservation: conjugation in coordinates is v -> P conj(v) with P the
/// (i,j) <-> (j,i) swap, so the matrix must satisfy M = P conj(M) P.
inline ValidationReport validate(const Superoperator& S, double tol = 1e-10) {
  const int d = S.dim();
  const Matrix& M = S.M;
  ValidationReport rep;

  Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) trace_row += M.row(i);
  rep.trace_residual = trace_row.norm();

  Eigen::VectorXi swap(d * d);
  for (int k = 0; k < d * d; ++k) {
    const auto [i, j] = coord_pair(k, d);
    swap(k) = coord_index(j, i, d);
  }
  Matrix PMP(d * d, d * d);
  for (int r = 0; r < d * d; ++r)
    for (int c = 0; c < d * d; ++c) PMP(r, c) = std::conj(M(swap(r), swap(c)));
  rep.hermiticity_residual = (M - PMP).norm();

  const double scale = tol * (1.0 + M.norm());
  rep.trace_preserving = rep.trace_residual <= scale;
  rep.hermiticity_preserving = rep.hermiticity_residual <= scale;
  return rep;
}

/// Rate matrix over the traceless operator basis: given directly (HD),
/// assembled from the traceless jump components (Jumps), or the lower-right
/// 3x3 block of the coefficient matrix (QubitPauli).
inline Matrix rate_matrix(const GeneratorSpec& spec) {
  return std::visit(
      [&](const auto& form) -> Matrix {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, HDSpec>)
          return form.D;
        else if constexpr (std::is_same_v<T, JumpSpec>)
          return jumps_to_hd(form, spec.dim()).D;
        else
          return form.L.bottomRightCorner(3, 3);
      },
      spec.form);
}

inline int noise_rank(const GeneratorSpec& spec, double tol = 1e-10) {
  const Matrix D = rate_matrix(spec);
  detail::require_hermitian(D, "rate matrix");
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Matrix>(D).eigenvalues();
  const double cutoff = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  int rank = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > cutoff) ++rank;
  return rank;
}

/// True iff the rate matrix is positive semidefinite, i.e. the propagators
/// are completely positive.
inline bool is_gksl(const GeneratorSpec& spec, double tol = 1e-10) {
  const Matrix D = rate_matrix(spec);
  detail::require_hermitian(D, "rate matrix");
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Matrix>(D).eigenvalues();
  return ev.minCoeff() >= -tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

// --- time dependence ----------------------------------------------------------

/// Generator family t -> spec.  The sampled certification routines assume the
/// family is analytic on the window they probe; this is documentation, the
/// code cannot enforce it.
struct TimeDependentGenerator {
  std::function<GeneratorSpec(double)> sampler;
  std::string smoothness = "assumed analytic on the analysis window";
};

}  // namespace ncgd
