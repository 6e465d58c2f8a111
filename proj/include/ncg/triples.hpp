#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ncg/algebra.hpp"
#include "ncg/clifford.hpp"

namespace ncg {

// A (real, even) spectral triple in the exact calculus: a represented algebra,
// an operator of order <= 1, a grading, and an antilinear real structure, all
// on one fixed n-dimensional fibre.  generic_rep produces the represented
// generic algebra element for a prefix; calling twice with different prefixes
// yields independent elements, which is how "for all a, b" is checked.
struct Triple {
  int n = 0;
  std::function<Mat(const std::string& prefix)> generic_rep;
  OperatorExpr d;
  Mat grading;
  AntilinearOp j;
};

// Sign triple -> even KO dimension mod 8, per the standard classification
// table (external data, not derived here).
std::optional<int> ko_dimension(int eps, int eps_prime, int eps_dprime);

// [rep(a), J rep(b) J^-1] = 0 identically in the generic entries.
bool check_order_zero(const Triple& t);
// [[D, rep(a)], J rep(b) J^-1] = 0 identically.
bool check_first_order(const Triple& t);

struct TripleReport {
  bool d_selfadjoint = false;
  bool commutators_bounded = false;
  bool grading_selfadjoint = false;
  bool grading_squares = false;
  bool grading_anticommutes_d = false;
  bool grading_commutes_rep = false;
  bool order_zero = false;
  bool first_order = false;
  int eps = 0, eps_prime = 0, eps_dprime = 0;  // 0 = not a definite sign
  std::optional<int> ko_dim;

  bool ok() const {
    return d_selfadjoint && commutators_bounded && grading_selfadjoint && grading_squares &&
           grading_anticommutes_d && grading_commutes_rep && order_zero && first_order &&
           ko_dim.has_value();
  }
};

TripleReport validate_triple(const Triple& t);

// Flat four-dimensional spin geometry: function germs act diagonally on the
// spinor fibre, D is the free Dirac operator, the grading is gamma5 and the
// real structure is charge conjugation.  KO dimension 4.
Triple manifold_triple();

// Even-even product: D = D_m x 1 + Gamma_m x D_f, J = J_m x J_f,
// Gamma = Gamma_m x Gamma_f, algebra generated by simple tensors.
Triple product_triple(const Triple& m, const Triple& f);

}  // namespace ncg
