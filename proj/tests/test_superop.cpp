#include <catch2/catch_amalgamated.hpp>

#include <ncgd/superop.hpp>

#include "support.hpp"

using namespace ncgd;
using test::random_complex;
using test::random_unitary;

namespace {

IncoherentBasis plus_minus_basis() {
  Matrix U(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  U << r, r, r, -r;
  return IncoherentBasis::from_unitary(U);
}

// Rotating dephasing generator: rho -> -i w [s3, rho] + g (s3 rho s3 - rho/2),
// with the normalized s3.  Its matrix in (s0, s1 | s2, s3) Pauli coordinates
// is the reference below.
Matrix rotating_dephasing_map(const Matrix& rho, double w, double g) {
  const Matrix s3 = normalized_paulis()[3];
  return Complex(0, -w) * (s3 * rho - rho * s3) + g * (s3 * rho * s3 - 0.5 * rho);
}

Matrix rotating_dephasing_pauli(double w, double g) {
  const double sq2w = std::sqrt(2.0) * w;
  Matrix P = Matrix::Zero(4, 4);
  P(1, 1) = -g;
  P(1, 2) = -sq2w;
  P(2, 1) = sq2w;
  P(2, 2) = -g;
  return P;
}

}  // namespace

TEST_CASE("coordinate index is a lexicographic population-first bijection") {
  for (int d : {2, 3, 5}) {
    int prev_i = -1, prev_j = -1;
    for (int k = 0; k < d * d; ++k) {
      const auto [i, j] = coord_pair(k, d);
      REQUIRE(coord_index(i, j, d) == k);
      if (k < d) {
        REQUIRE(i == j);
      } else {
        REQUIRE(i != j);
        if (k > d) REQUIRE(std::pair(prev_i, prev_j) < std::pair(i, j));
        prev_i = i;
        prev_j = j;
      }
    }
  }
}

TEST_CASE("vectorize puts populations first") {
  const auto comp = IncoherentBasis::computational(2);
  const Vector v_id = vectorize(Matrix::Identity(2, 2), comp);
  REQUIRE((v_id - Vector{{1.0, 1.0, 0.0, 0.0}}).norm() == 0.0);

  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const Vector v_plus = vectorize(plus, comp);
  REQUIRE((v_plus - Vector{{0.5, 0.5, 0.5, 0.5}}).norm() < 1e-15);

  // |+><+| is itself a basis state of the plus/minus basis.
  const Vector v_rot = vectorize(plus, plus_minus_basis());
  REQUIRE((v_rot - Vector{{1.0, 0.0, 0.0, 0.0}}).norm() < 1e-15);

  REQUIRE_THROWS_AS(vectorize(Matrix::Identity(3, 3), comp), std::invalid_argument);
}

TEST_CASE("unvectorize inverts vectorize") {
  const auto comp = IncoherentBasis::computational(2);
  REQUIRE((unvectorize(Vector{{1.0, 1.0, 0.0, 0.0}}, comp) - Matrix::Identity(2, 2)).norm() ==
          0.0);

  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  REQUIRE((unvectorize(Vector{{1.0, 0.0, 0.0, 0.0}}, plus_minus_basis()) - plus).norm() <
          1e-15);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    const IncoherentBasis b = trial % 2 ? IncoherentBasis::from_unitary(random_unitary(d, rng))
                                        : IncoherentBasis::computational(d);
    const Matrix X = random_complex(d, d, rng);
    REQUIRE((unvectorize(vectorize(X, b), b) - X).norm() < 1e-14 * X.norm());
  }

  REQUIRE_THROWS_AS(unvectorize(Vector::Zero(5), comp), std::invalid_argument);
}

TEST_CASE("dephasing projector is the 0/1 population projector") {
  const Matrix D2 = dephasing_superop(IncoherentBasis::computational(2)).M;
  REQUIRE((D2 - Vector{{1.0, 1.0, 0.0, 0.0}}.asDiagonal().toDenseMatrix()).norm() == 0.0);

  for (int d : {2, 3, 5}) {
    const Matrix D = dephasing_matrix(d);
    REQUIRE((D * D - D).norm() == 0.0);
    REQUIRE((D - D.adjoint()).norm() == 0.0);
    REQUIRE(Eigen::FullPivLU<Matrix>(D).rank() == d);
  }
}

TEST_CASE("block split slices population and coherence sectors") {
  const auto comp = IncoherentBasis::computational(2);
  const Superoperator id{comp, Matrix::Identity(4, 4)};
  const BlockSplit B = block_split(id);
  REQUIRE((B.pp - Matrix::Identity(2, 2)).norm() == 0.0);
  REQUIRE((B.cc - Matrix::Identity(2, 2)).norm() == 0.0);
  REQUIRE(B.pc.norm() == 0.0);
  REQUIRE(B.cp.norm() == 0.0);

  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 2;
    const Superoperator S{IncoherentBasis::computational(d),
                          random_complex(d * d, d * d, rng)};
    REQUIRE((reassemble(block_split(S)) - S.M).norm() == 0.0);

    // Delta S Delta_perp keeps only the pc block.
    const Matrix D = dephasing_matrix(d);
    const Matrix Dp = Matrix::Identity(d * d, d * d) - D;
    const BlockSplit P = block_split({S.basis, D * S.M * Dp});
    REQUIRE(P.pp.norm() == 0.0);
    REQUIRE(P.cp.norm() == 0.0);
    REQUIRE(P.cc.norm() == 0.0);
    REQUIRE((P.pc - block_split(S).pc).norm() == 0.0);
  }
}

TEST_CASE("rotating dephasing generator blocks in the plus/minus basis") {
  const double w = 1.0, g = 1.0;
  const double sq2 = std::sqrt(2.0);
  const Superoperator P{plus_minus_basis(), rotating_dephasing_pauli(w, g)};
  const BlockSplit B = block_split(P);

  Matrix pp(2, 2), pc(2, 2), cp(2, 2), cc(2, 2);
  pp << 0, 0, 0, -g;
  pc << 0, 0, -sq2 * w, 0;
  cp << 0, sq2 * w, 0, 0;
  cc << -g, 0, 0, 0;
  REQUIRE((B.pp - pp).norm() == 0.0);
  REQUIRE((B.pc - pc).norm() == 0.0);
  REQUIRE((B.cp - cp).norm() == 0.0);
  REQUIRE((B.cc - cc).norm() == 0.0);
}

TEST_CASE("pauli coordinates form a unitary similarity") {
  const auto pm = plus_minus_basis();
  const Matrix W = pauli_transform(pm, pauli_order_sigma1_incoherent);
  REQUIRE((W * W.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-14);

  const Superoperator id{pm, Matrix::Identity(4, 4)};
  REQUIRE((to_pauli_coordinates(id, pauli_order_sigma1_incoherent) -
           Matrix::Identity(4, 4))
              .norm() < 1e-14);

  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const IncoherentBasis b = trial % 2 ? IncoherentBasis::from_unitary(random_unitary(2, rng))
                                        : IncoherentBasis::computational(2);
    const auto order =
        trial % 3 ? pauli_order_sigma1_incoherent : pauli_order_sigma3_incoherent;
    const Superoperator S{b, random_complex(4, 4, rng)};
    const Matrix P = to_pauli_coordinates(S, order);
    REQUIRE((from_pauli_coordinates(P, b, order).M - S.M).norm() <
            1e-13 * S.M.norm());

    Eigen::VectorXcd ev_m = Eigen::ComplexEigenSolver<Matrix>(S.M).eigenvalues();
    Eigen::VectorXcd ev_p = Eigen::ComplexEigenSolver<Matrix>(P).eigenvalues();
    std::sort(ev_m.begin(), ev_m.end(), [](Complex a, Complex b) {
      return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
    });
    std::sort(ev_p.begin(), ev_p.end(), [](Complex a, Complex b) {
      return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
    });
    REQUIRE((ev_m - ev_p).norm() < 1e-12 * (1.0 + ev_m.norm()));
  }
}

TEST_CASE("rotating dephasing generator matches its pauli-coordinate form") {
  const double w = 1.3, g = 0.7;
  const auto pm = plus_minus_basis();
  const Superoperator S =
      superop_from_map([&](const Matrix& rho) { return rotating_dephasing_map(rho, w, g); },
                       pm);
  const Matrix P = to_pauli_coordinates(S, pauli_order_sigma1_incoherent);
  const Matrix expected = rotating_dephasing_pauli(w, g);
  REQUIRE((P - expected).norm() < 1e-13);

  // Zero pattern (the block structure) survives the coordinate change.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      REQUIRE((std::abs(P(i, j)) < 1e-13) == (std::abs(expected(i, j)) == 0.0));

  REQUIRE((from_pauli_coordinates(expected, pm, pauli_order_sigma1_incoherent).M - S.M)
              .norm() < 1e-13);
}

TEST_CASE("basis constructors validate input") {
  REQUIRE_THROWS_AS(IncoherentBasis::computational(1), std::invalid_argument);
  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;
  REQUIRE_THROWS_AS(IncoherentBasis::from_unitary(bad), std::invalid_argument);
  std::mt19937 rng(14);
  REQUIRE_NOTHROW(IncoherentBasis::from_unitary(random_unitary(5, rng)));
}
