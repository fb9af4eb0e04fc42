#pragma once

// State propagation and sequential-measurement statistics.  The witness is
// the trace distance between the population distributions obtained with and
// without an intermediate dephasing: it is strictly positive at some time
// triple iff the dynamics is CGD, and the maximum over incoherent inputs is
// attained at an extreme point |i><i| (the map rho0 -> (p, q) is affine and
// the distance is convex, so the simplex refinement is only a cross-check).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad.hpp"
#include "superop.hpp"

namespace ncgd {

struct Propagator {
  Superoperator map;
  double t_start = 0.0, t_end = 0.0;
  double error_estimate = 0.0;  // step-doubling estimate; 0 for exact exponentials
};

inline Propagator propagate_const(const Superoperator& S, double t) {
  if (t < 0) throw std::invalid_argument("propagation time must be nonnegative");
  return {{S.basis, Matrix((t * S.M).exp())}, 0.0, t, 0.0};
}

namespace detail {

inline Matrix stepped_product(const TimeDependentGenerator& gen, double t0,
                              double t1, int steps) {
  const double h = (t1 - t0) / steps;
  Matrix P;
  for (int k = 0; k < steps; ++k) {
    const Matrix E = (h * build(gen.sampler(t0 + (k + 0.5) * h)).M).exp();
    P = (k == 0) ? E : Matrix(E * P);
  }
  return P;
}

inline void require_time_order(double t1, double t2, double t3) {
  if (!(t1 >= 0.0 && t2 >= t1 && t3 >= t2))
    throw std::invalid_argument("times must satisfy 0 <= t1 <= t2 <= t3");
}

}  // namespace detail

/// Time-ordered propagator as a product of per-step exponentials with
/// midpoint-sampled generators.  The result uses 2*steps steps; the reported
/// error estimate is the distance to the steps-step product.
inline Propagator propagate_timedep(const TimeDependentGenerator& gen,
                                    double t_start, double t_end, int steps) {
  if (t_end < t_start) throw std::invalid_argument("propagation interval is reversed");
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const IncoherentBasis basis = gen.sampler(t_start).basis;
  if (t_end == t_start) {
    const int n = basis.d * basis.d;
    return {{basis, Matrix::Identity(n, n)}, t_start, t_end, 0.0};
  }
  const Matrix coarse = detail::stepped_product(gen, t_start, t_end, steps);
  const Matrix fine = detail::stepped_product(gen, t_start, t_end, 2 * steps);
  return {{basis, fine}, t_start, t_end, (fine - coarse).norm()};
}

struct SequentialDistributions {
  RealVector p, q;  // populations without / with the intermediate dephasing
  // False when an entry dips below -1e-12 or a sum strays from 1 by more than
  // 1e-10; possible for generators with indefinite rate matrices, which are
  // propagated anyway and only flagged.
  bool probability_ok = true;
};

namespace detail {

inline RealVector populations(const Vector& v, int d) {
  RealVector out(d);
  for (int i = 0; i < d; ++i) out[i] = v[i].real();
  return out;
}

inline bool is_probability_vector(const RealVector& x) {
  return x.minCoeff() >= -1e-12 && std::abs(x.sum() - 1.0) <= 1e-10;
}

}  // namespace detail

/// Populations after propagation of the dephased input: p from a single
/// propagation over [t1, t3], q with an additional dephasing at t2.
inline SequentialDistributions sequential_distributions(const Superoperator& S,
                                                        const Vector& rho0, double t1,
                                                        double t2, double t3) {
  detail::require_time_order(t1, t2, t3);
  const int d = S.dim();
  if (rho0.size() != S.M.rows())
    throw std::invalid_argument("initial state has wrong dimension");
  double pop_sum = 0.0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(rho0[i].imag()) > 1e-9 || rho0[i].real() < -1e-9)
      throw std::invalid_argument("initial state has invalid populations");
    pop_sum += rho0[i].real();
  }
  if (std::abs(pop_sum - 1.0) > 1e-9)
    throw std::invalid_argument("initial-state populations must sum to 1");

  const Matrix D = dephasing_matrix(d);
  const Vector v0 = D * rho0;
  const Vector pv = ((t3 - t1) * S.M).exp() * v0;
  const Vector qv =
      ((t3 - t2) * S.M).exp() * Vector(D * Vector(((t2 - t1) * S.M).exp() * v0));

  SequentialDistributions out;
  out.p = detail::populations(pv, d);
  out.q = detail::populations(qv, d);
  out.probability_ok = detail::is_probability_vector(out.p) &&
                       detail::is_probability_vector(out.q);
  return out;
}

inline double trace_distance(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution lengths differ");
  return 0.5 * (p - q).lpNorm<1>();
}

struct WitnessValue {
  double value = 0.0;
  int argmax_state = 0;  // extreme point |i><i| attaining the maximum
};

/// Maximum of trace_distance(p, q) over incoherent inputs, evaluated at the
/// extreme points of the incoherent simplex.
inline WitnessValue witness(const Superoperator& S, double t1, double t2, double t3) {
  detail::require_time_order(t1, t2, t3);
  const int d = S.dim();
  const Matrix D = dephasing_matrix(d);
  const Matrix P = ((t3 - t1) * S.M).exp();
  const Matrix Q = Matrix(((t3 - t2) * S.M).exp()) * D *
                   Matrix(((t2 - t1) * S.M).exp());

  WitnessValue best;
  for (int i = 0; i < d; ++i) {  // input |i><i| selects column i
    double dist = 0.0;
    for (int r = 0; r < d; ++r) dist += std::abs(P(r, i).real() - Q(r, i).real());
    dist *= 0.5;
    if (dist > best.value) {
      best.value = dist;
      best.argmax_state = i;
    }
  }
  return best;
}

/// Cross-check of the extreme-point maximization on the barycentric grid of
/// denominator m (all population vectors k/m); by convexity it can never
/// exceed the extreme-point value.
inline double witness_refined(const Superoperator& S, double t1, double t2, double t3,
                              int m) {
  detail::require_time_order(t1, t2, t3);
  if (m < 1) throw std::invalid_argument("refinement order must be >= 1");
  const int d = S.dim();
  const Matrix D = dephasing_matrix(d);
  const Matrix P = ((t3 - t1) * S.M).exp();
  const Matrix Q = Matrix(((t3 - t2) * S.M).exp()) * D *
                   Matrix(((t2 - t1) * S.M).exp());

  double best = 0.0;
  std::vector<int> comp(d, 0);
  auto scan = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == d - 1) {
      comp[idx] = remaining;
      double dist = 0.0;
      for (int r = 0; r < d; ++r) {
        Complex pr = 0.0, qr = 0.0;
        for (int i = 0; i < d; ++i) {
          const double w = static_cast<double>(comp[i]) / m;
          pr += w * P(r, i);
          qr += w * Q(r, i);
        }
        dist += std::abs(pr.real() - qr.real());
      }
      best = std::max(best, 0.5 * dist);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      comp[idx] = k;
      self(self, idx + 1, remaining - k);
    }
  };
  scan(scan, 0, m);
  return best;
}

struct CurveSample {
  double t2 = 0.0, value = 0.0;
};

struct WitnessCurve {
  double t3 = 0.0;
  std::vector<CurveSample> samples;
  std::string generator;  // human-readable provenance, filled by callers
  std::string basis;
};

/// Witness over a uniform t2 grid on [t1, t3]; t1 defaults to 0 as in the
/// single-intermediate-time figures.
inline WitnessCurve witness_curve(const Superoperator& S, double t3, int n_samples,
                                  double t1 = 0.0) {
  if (t3 < 0) throw std::invalid_argument("final time must be nonnegative");
  if (t1 < 0 || t1 > t3) throw std::invalid_argument("t1 must lie in [0, t3]");
  if (n_samples < 2) throw std::invalid_argument("curve needs at least two samples");
  WitnessCurve curve;
  curve.t3 = t3;
  curve.samples.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t2 =
        (k == n_samples - 1) ? t3 : t1 + (t3 - t1) * k / (n_samples - 1);
    curve.samples[k] = {t2, witness(S, t1, t2, t3).value};
  }
  return curve;
}

/// Choi matrix of a propagator (or any superoperator) in the incoherent
/// basis; positive semidefinite iff the map is completely positive.
inline Matrix choi_matrix(const Superoperator& E) {
  const int d = E.dim();
  Matrix J(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int b = 0; b < d; ++b)
        for (int j = 0; j < d; ++j)
          J(a * d + i, b * d + j) = E.M(coord_index(a, b, d), coord_index(i, j, d));
  return J;
}

inline double choi_min_eigenvalue(const Superoperator& E) {
  const Matrix J = choi_matrix(E);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (J + J.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ncgd
