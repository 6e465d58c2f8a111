#pragma once

#include <array>

#include "ncg/linalg.hpp"
#include "ncg/linsolve.hpp"
#include "ncg/scalar.hpp"

namespace ncg {

// Fixed 4x4 Euclidean gamma matrices in the chiral block form
//   gamma^mu = [[0, s^mu], [sb^mu, 0]],  s^mu = {I, i s_j}, sb^mu = {I, -i s_j}
// (s_j the Pauli matrices).  All four are selfadjoint and satisfy
//   gamma^mu gamma^nu + gamma^nu gamma^mu = 2 delta^{mu nu} I.
const Mat& gamma(int mu);  // mu in 0..3

// gamma5 = gamma0 gamma1 gamma2 gamma3 = diag(I2, -I2); squares to I and
// anticommutes with every gamma^mu.
const Mat& gamma5();

// Pauli matrix s_k, k = 1..3 (2x2).
const Mat& pauli(int k);

// Charge conjugation psi -> U conj(psi) with U = i gamma0 gamma2
// = diag(s2, -s2): U conj(gamma^mu) U^-1 = -gamma^mu and U conj(U) = -I.
AntilinearOp charge_conjugation();

// Differential operator of order <= 1 with matrix germ coefficients:
//   X = c0 + sum_mu c1[mu] d_mu.
// Composition uses the Leibniz rule through the symbol derivation; composing
// two order-1 operators is rejected (nothing in the engine needs order 2).
class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(int n);  // zero operator on an n-dimensional fibre
  static OperatorExpr order_zero(Mat m);
  static OperatorExpr first_order(Mat c0, std::array<Mat, 4> c1);

  int dim() const { return c0_.rows(); }
  const Mat& order0() const { return c0_; }
  const Mat& order1(int mu) const;

  bool is_zero() const;
  // No derivative part: the operator is a plain (germ-valued) matrix.
  bool is_bounded() const;
  int degree() const { return is_bounded() ? 0 : 1; }

  OperatorExpr operator+(const OperatorExpr& o) const;
  OperatorExpr operator-(const OperatorExpr& o) const;
  OperatorExpr operator-() const;
  // Operator composition; at most one factor may be first order.
  OperatorExpr operator*(const OperatorExpr& o) const;
  // Left multiplication by a scalar function (no derivative hits s).
  OperatorExpr operator*(const Scalar& s) const;
  bool operator==(const OperatorExpr& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }
  bool operator!=(const OperatorExpr& o) const { return !(*this == o); }

  // Formal adjoint with d_mu^dag = -d_mu:
  //   (c0 + c_mu d_mu)^dag = c0^dag - sum_mu d_mu(c_mu^dag) - c_mu^dag d_mu.
  OperatorExpr adjoint() const;
  // J X J^-1 for an antilinear J (K commutes with the real derivations).
  OperatorExpr conj_by(const AntilinearOp& j) const;
  // X tensor f on an enlarged fibre, this factor outermost.
  OperatorExpr kron_right(const Mat& f) const;
  OperatorExpr substitute(const std::map<SymbolId, Scalar>& b) const;

 private:
  Mat c0_;
  std::array<Mat, 4> c1_;
};

inline OperatorExpr operator*(const Scalar& s, const OperatorExpr& x) { return x * s; }

// The flat Dirac operator -i gamma^mu d_mu (selfadjoint; the spin connection
// vanishes in the flat calculus).
OperatorExpr dirac_free();

// [d, a] for a matrix of function germs; bounded whenever d is order <= 1
// with constant leading coefficients.
OperatorExpr germ_commutator(const OperatorExpr& d, const Mat& a);

// Solution of the two-sided gamma intertwiner problem
//   gamma^mu A = B gamma^mu  for all mu,
// over constant 4x4 matrices A, B.  The solution space is two-dimensional:
// A = diag(l I2, l' I2), B = diag(l' I2, l I2).
struct Intertwiner {
  SolutionSpace space;  // 32 entry unknowns, A row-major then B row-major
  Mat a, b;             // generic members
};
Intertwiner solve_intertwiner_constraint();

}  // namespace ncg
