#pragma once

// Built-in example generators used by the CLI catalog and the test suite.
// All frequencies and rates are in units of the qubit rotation frequency
// (omega = 1), matching the time axes of the emitted witness curves.

#include <string>
#include <vector>

#include "lindblad.hpp"

namespace ncgd {

/// Eigenbasis of s_1: columns |+>, |->.
inline IncoherentBasis plus_minus_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix U(2, 2);
  U << r, r, r, -r;
  return IncoherentBasis::from_unitary(U);
}

/// Ramsey pure dephasing: rotation omega about s_3 with rank-one s_3 noise.
inline JumpSpec ramsey_dephasing_jumps(double omega, double gamma) {
  const auto& s = normalized_paulis();
  return {omega * Matrix(s[3]), {std::sqrt(gamma) * Matrix(s[3])}};
}

/// Rates of the general Ramsey qubit, in units of omega:
/// (g11 = g22, g33; g12, g13, g23).
struct RamseyRates {
  double g11 = 1.0, g33 = 0.0, g12 = 0.0, g13 = 0.0, g23 = 0.0;
};

/// Qubit coefficient matrix for rotation omega about s_3 plus a real
/// symmetric rate matrix: Hamiltonian enters row/column 0 as
/// Im L_03 = sqrt(2) omega.
inline Matrix ramsey_coefficients(double omega, const RamseyRates& r) {
  Matrix L = Matrix::Zero(4, 4);
  L(0, 3) = Complex(0, std::sqrt(2.0) * omega);
  L(3, 0) = std::conj(L(0, 3));
  L(1, 1) = r.g11;
  L(2, 2) = r.g11;
  L(3, 3) = r.g33;
  L(1, 2) = L(2, 1) = r.g12;
  L(1, 3) = L(3, 1) = r.g13;
  L(2, 3) = L(3, 2) = r.g23;
  return L;
}

/// Five-level model with rank-3 noise: the first two population-coherence
/// product conditions vanish identically while the third does not, so the
/// dynamics generates and detects coherence only through second-order
/// coherence mixing.
inline JumpSpec five_level_jumps() {
  const Complex I(0, 1);
  Matrix H = Matrix::Zero(5, 5);
  H(0, 0) = H(1, 1) = 0.5;
  H(0, 1) = H(1, 0) = -0.5;
  H(3, 3) = 0.5;
  H(3, 4) = H(4, 3) = 0.5;
  H(4, 4) = -0.5;

  const double r = 1.0 / std::sqrt(2.0);
  Matrix J1 = Matrix::Zero(5, 5);
  J1(0, 0) = r;
  J1(0, 1) = -I * r;
  J1(1, 0) = I * r;
  J1(1, 1) = -r;
  J1(3, 3) = r;
  J1(3, 4) = -I * r;
  J1(4, 3) = I * r;
  J1(4, 4) = -r;

  Matrix J2 = Matrix::Zero(5, 5);
  J2(0, 0) = 1;
  J2(2, 1) = 1;

  Matrix J3 = Matrix::Zero(5, 5);
  J3(3, 0) = 1;
  J3(4, 2) = 1;

  return {H, {J1, J2, J3}};
}

struct ExampleParams {
  double gamma = 1.0;            // dephasing rate for the ramsey-dephasing pair
  RamseyRates rates;             // rate set for fig2
};

struct ExampleInfo {
  std::string name;
  std::string description;
};

inline const std::vector<ExampleInfo>& example_catalog() {
  static const std::vector<ExampleInfo> catalog = {
      {"ramsey-dephasing-sigma3basis",
       "rotating qubit with dephasing along the rotation axis, measured in the "
       "rotation-axis eigenbasis (generator commutes with dephasing: NCGD)"},
      {"ramsey-dephasing-sigma1basis",
       "the same rotating-dephasing qubit measured in the orthogonal |+>/|-> "
       "basis, where the rotation converts populations to coherences and back "
       "(CGD); alias: ramsey"},
      {"fig2",
       "rotating qubit with a general real rate matrix, measured in the "
       "|+>/|-> basis; --rates g11,g33,g12,g13,g23 sets "
       "(g11 = g22, g33; g12, g13, g23) in units of the rotation frequency"},
      {"five-level-appendix",
       "five-level model with rank-3 noise whose population-coherence products "
       "vanish at orders 0 and 1 but not at order 2 (CGD beyond the pair "
       "condition)"},
  };
  return catalog;
}

inline GeneratorSpec make_example(const std::string& name,
                                  const ExampleParams& params = {}) {
  const double omega = 1.0;
  if (name == "ramsey-dephasing-sigma3basis")
    return {ramsey_dephasing_jumps(omega, params.gamma),
            IncoherentBasis::computational(2)};
  if (name == "ramsey-dephasing-sigma1basis" || name == "ramsey")
    return {ramsey_dephasing_jumps(omega, params.gamma), plus_minus_basis()};
  if (name == "fig2")
    return {QubitPauliSpec{ramsey_coefficients(omega, params.rates)},
            plus_minus_basis()};
  if (name == "five-level-appendix")
    return {five_level_jumps(), IncoherentBasis::computational(5)};
  throw std::invalid_argument("unknown example \"" + name + "\"");
}

}  // namespace ncgd
