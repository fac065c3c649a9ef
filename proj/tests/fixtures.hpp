#pragma once

#include <doctest.h>

#include <functional>

#include "kronsync/network.hpp"
#include "kronsync/oscillator.hpp"

namespace kronsync::testing {

/// Asserts that `body` throws Error with the given code.
inline void check_error(ErrorCode expected, const std::function<void()>& body) {
  try {
    body();
    FAIL_CHECK("expected error " << error_code_name(expected));
  } catch (const Error& e) {
    CHECK(std::string(error_code_name(e.code())) ==
          error_code_name(expected));
  }
}

/// Four-node bridge: dampers {(1,3)}, springs {(1,2),(2,3),(3,4)}, unit
/// weights, boundary {1,2,4}. Canonical node order [1,2,4,3].
inline CouplingNetwork bridge_network() {
  RawNetwork raw;
  raw.node_count = 4;
  raw.boundary = {"1", "2", "4"};
  raw.dampers = {{"1", "3", 1.0}};
  raw.springs = {{"1", "2", 1.0}, {"2", "3", 1.0}, {"3", "4", 1.0}};
  return validate_network(raw);
}

/// Reduced boundary coupling of the bridge network (frozen oracle values).
inline ComplexMatrix bridge_gamma() {
  ComplexMatrix g(3, 3);
  g << Complex(0.8, 1.4), Complex(-0.4, -1.2), Complex(-0.4, -0.2),
      Complex(-0.4, -1.2), Complex(0.2, 1.6), Complex(0.2, -0.4),
      Complex(-0.4, -0.2), Complex(0.2, -0.4), Complex(0.2, 0.6);
  return g;
}

inline Matrix bridge_lambda() {
  Matrix l(3, 3);
  l << 1.0, -1.0, 0.0, -1.0, 1.5, -0.5, 0.0, -0.5, 0.5;
  return l;
}

/// Two boundary nodes joined through one interior node by springs only
/// (weights 1 and 0.5). Gamma = (j/3) [[1,-1],[-1,1]]; the deciding
/// eigenvalue is 2j/3.
inline CouplingNetwork spring_chain_network() {
  RawNetwork raw;
  raw.node_count = 3;
  raw.boundary = {"1", "2"};
  raw.springs = {{"1", "3", 1.0}, {"2", "3", 0.5}};
  return validate_network(raw);
}

/// Two disconnected pairs, all four nodes on the boundary:
/// dampers (1,2) w=1 and (3,4) w=0.8, spring (1,2) w=0.5.
/// Gamma eigenvalues {0, 0, 1.6, 2+j}.
inline CouplingNetwork disconnected_network() {
  RawNetwork raw;
  raw.node_count = 4;
  raw.boundary = {"1", "2", "3", "4"};
  raw.dampers = {{"1", "2", 1.0}, {"3", "4", 0.8}};
  raw.springs = {{"1", "2", 0.5}};
  return validate_network(raw);
}

/// Two boundary nodes, one damper and one spring of unit weight.
/// Gamma = (1+j) [[1,-1],[-1,1]]; margin 2.
inline CouplingNetwork pair_network(double damper = 1.0, double spring = 1.0) {
  RawNetwork raw;
  raw.node_count = 2;
  raw.boundary = {"1", "2"};
  if (damper > 0.0) raw.dampers = {{"1", "2", damper}};
  if (spring > 0.0) raw.springs = {{"1", "2", spring}};
  return validate_network(raw);
}

inline OscillatorModel scalar_oscillator(double m = 1.0, double k = 1.0,
                                         double b = 1.0) {
  return validate_oscillator(Matrix::Constant(1, 1, m),
                             Matrix::Constant(1, 1, k),
                             Vector::Constant(1, b));
}

/// Order-2 oscillator with non-diagonal mass/stiffness; both modes visible
/// through B.
inline OscillatorModel planar_oscillator() {
  Matrix m(2, 2), k(2, 2);
  m << 2.0, 0.3, 0.3, 1.0;
  k << 1.5, -0.2, -0.2, 2.5;
  Vector b(2);
  b << 1.0, 0.5;
  return validate_oscillator(m, k, b);
}

/// Least-squares oracle for the interior-elimination defining relation:
/// solve W E = -V^T by minimum-norm least squares, then U + V E.
template <typename Scalar>
DenseMatrix<Scalar> lsq_reduced(const DenseMatrix<Scalar>& u,
                                const DenseMatrix<Scalar>& v,
                                const DenseMatrix<Scalar>& w) {
  if (w.rows() == 0) return u;
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix<Scalar>> cod(w);
  const DenseMatrix<Scalar> e = cod.solve(DenseMatrix<Scalar>(-v.transpose()));
  return u + v * e;
}

}  // namespace kronsync::testing
