#pragma once

#include <functional>
#include <string>
#include <utility>

#include "ncg/clifford.hpp"
#include "ncg/linsolve.hpp"
#include "ncg/triples.hpp"

namespace ncg {

// A spectral triple twisted by an involutive algebra automorphism.
//
// The automorphism acts on represented elements by conjugation with a fixed
// constant unitary R: rho(x) = R x R^dag.  The algebras in scope are
// "doubled": a generic element carries two legs that the automorphism
// exchanges, and pair_rep builds the representation of a pair with
// independently named legs, so the exchange can be stated (and verified)
// exactly on generic elements.
struct TwistedTriple {
  Triple base;  // base.generic_rep is the doubled (two-leg) representation
  Mat r;        // constant unitary implementing the automorphism

  // Grading-like operator whose +-/- eigenprojections carve out the two legs.
  // Empty (0x0) for twists not built from an eigensplit.
  Mat splitter;

  // pair_rep(pa, pb): generic element with leg symbols prefixed pa and pb.
  // The automorphism sends pair_rep(pa, pb) to pair_rep(pb, pa).
  std::function<Mat(const std::string&, const std::string&)> pair_rep;

  // Representation of the original (undoubled) algebra, when the twist was
  // built by doubling one; the diagonal pair then reproduces it.  May be null.
  std::function<Mat(const std::string&)> untwisted_rep;

  Mat rho(const Mat& x) const;
  OperatorExpr rho(const OperatorExpr& x) const;  // coefficientwise conjugation
};

// Structural facts about a twist, all decided exactly.
struct TwistReport {
  bool r_unitary = false;
  bool r_selfadjoint = false;
  bool r_involutive = false;      // R^2 == I
  bool flip_implemented = false;  // rho(pair_rep(a,b)) == pair_rep(b,a)
  bool diagonal_limit = true;     // pair_rep(a,a) == untwisted_rep(a), when checkable
  int r_vs_j = 0;                 // +1: RJ == JR, -1: RJ == -JR, 0: neither
  int splitter_vs_d = 0;          // +1/-1: splitter (anti)commutes with D, 0: neither/none
  std::pair<int, int> signature{0, 0};  // multiplicities of the +1/-1 eigenvalues of R

  bool ok() const {
    return r_unitary && r_selfadjoint && r_involutive && flip_implemented &&
           diagonal_limit && r_vs_j != 0;
  }
};

TwistReport validate_twist(const TwistedTriple& t);

// D a - rho(a) D at operator level; a is a represented element.
OperatorExpr twisted_commutator(const OperatorExpr& d, const Mat& a, const Mat& r);
OperatorExpr twisted_commutator(const OperatorExpr& d, const Mat& a, const TwistedTriple& t);

// Every entry of every coefficient matrix, as a normalized constraint set.
ConstraintSet entry_constraints(const OperatorExpr& x);

// Twisted first-order condition for the given part of the Dirac operator:
//   [D, a]_rho b_op - rho_op(b_op) [D, a]_rho == 0   on generic a, b,
// where b_op = J b^dag J^-1 is the right action and rho_op(b_op) is the right
// action of the twisted element, J rho(b)^dag J^-1.  Returns the residual
// entry constraints (empty iff the condition holds identically).
ConstraintSet check_twisted_first_order(const TwistedTriple& t, const OperatorExpr& d_part);
ConstraintSet check_twisted_first_order(const TwistedTriple& t);

// Assembles a twisted triple from parts and verifies the twist invariants:
// R constant unitary, and R pair_rep(a,b) R^dag == pair_rep(b,a) generically.
// base.generic_rep is (re)derived from pair_rep with ".u"/".v" leg suffixes.
TwistedTriple make_twisted(Triple base, std::function<Mat(const std::string&, const std::string&)> pair,
                           Mat r, Mat splitter = Mat(), std::function<Mat(const std::string&)> untwisted = nullptr);

// Doubles the algebra of a triple along a grading-like operator g:
// the two legs are the +-/- eigenspaces, pair_rep(a,b) = P+ rep(a) + P- rep(b)
// with P+- = (I +- g)/2.  Requires g constant selfadjoint involutive with both
// eigenvalues present and commuting with the representation; r must implement
// the leg exchange.  Named violations throw std::invalid_argument.
TwistedTriple minimal_twist(const Triple& t, const Mat& splitter, Mat r);

// minimal_twist along the triple's own grading.
TwistedTriple twist_by_grading(const Triple& t, Mat r);

// <psi, phi>_rho = <psi, R phi> = psi^dag R phi for column vectors.
Scalar rho_product(const TwistedTriple& t, const Mat& psi, const Mat& phi);

// O^+ = rho(O)^dag, the adjoint with respect to the rho-product.
Mat rho_adjoint(const TwistedTriple& t, const Mat& o);

// Eigenvalue multiplicities (plus, minus) of a constant selfadjoint
// involution, read off exactly from the trace.
std::pair<int, int> r_signature(const Mat& r);

// Closure of a subalgebra under the twist.  sub_rep(prefix) builds the
// generic represented element of the subalgebra; the question is whether the
// twisted image of a generic element is again of that form.  The returned
// constraints are the exact conditions on the element's own parameters; the
// subalgebra is closed iff the system is solvable with no constraints.
struct ClosureResult {
  bool closed = false;
  ConstraintSet constraints;  // conditions under which the image lies in the subalgebra
  SolutionSpace solution;     // parameters of the matching element, where solvable
  Mat witness;                // twisted image of the generic element when not closed
};

ClosureResult check_closure_under_twist(const TwistedTriple& t,
                                        const std::function<Mat(const std::string&)>& sub_rep,
                                        const std::string& tag = "cls");

}  // namespace ncg
