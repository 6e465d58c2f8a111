#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncg/twists.hpp"

using namespace ncg;

namespace {

struct Fixture {
  Fixture() { Symbols::reset(); }
};

std::mt19937 rng(20260822u);

Rat rand_rat() {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  Rat q(num(rng), den(rng));
  q.canonicalize();  // mpq_class(num, den) does not reduce on its own
  return q;
}

GaussRat rand_gauss() { return GaussRat(rand_rat(), rand_rat()); }

Mat rand_const_mat(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Scalar(rand_gauss());
  return m;
}

// Unitary with exact rational entries: Cayley transform of an anti-hermitian A.
Mat rand_unitary(int n) {
  for (;;) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i) {
      a.at(i, i) = Scalar(GaussRat(Rat(0), rand_rat()));
      for (int j = i + 1; j < n; ++j) {
        GaussRat z = rand_gauss();
        a.at(i, j) = Scalar(z);
        a.at(j, i) = Scalar(-z.conj());
      }
    }
    Mat ap = a + Mat::identity(n);
    try {
      return (a - Mat::identity(n)) * ap.inverse_constant();
    } catch (const std::exception&) {
      continue;  // A + I singular; redraw
    }
  }
}

// The flat geometry twisted along its own grading, exchange unitary gamma^0.
TwistedTriple twisted_flat() { return twist_by_grading(manifold_triple(), gamma(0)); }

}  // namespace

TEST_CASE_FIXTURE(Fixture, "twist of the flat geometry along its grading") {
  TwistedTriple t = twisted_flat();

  // Doubled representation: chiral halves carry independent functions.
  Mat a = t.pair_rep("f", "g");
  Symbol f = Symbols::lookup("f"), g = Symbols::lookup("g");
  CHECK(a == Mat::diag({Scalar(f), Scalar(f), Scalar(g), Scalar(g)}));
  CHECK(t.rho(a) == t.pair_rep("g", "f"));

  TwistReport rep = validate_twist(t);
  CHECK(rep.r_unitary);
  CHECK(rep.r_selfadjoint);
  CHECK(rep.r_involutive);
  CHECK(rep.flip_implemented);
  CHECK(rep.diagonal_limit);
  CHECK(rep.r_vs_j == -1);        // gamma^0 anticommutes with charge conjugation
  CHECK(rep.splitter_vs_d == -1);  // grading anticommutes with the Dirac operator
  CHECK(rep.signature == std::pair<int, int>{2, 2});
  CHECK(rep.ok());
}

TEST_CASE_FIXTURE(Fixture, "alternate splitting with its own exchange unitary") {
  // gamma^0 splits the fibre too; gamma^5 anticommutes with it and so
  // exchanges the eigenspaces.
  TwistedTriple t = minimal_twist(manifold_triple(), gamma(0), gamma5());
  TwistReport rep = validate_twist(t);
  CHECK(rep.flip_implemented);
  CHECK(rep.diagonal_limit);
  CHECK(rep.r_vs_j == 1);  // gamma^5 commutes with charge conjugation
  CHECK(rep.splitter_vs_d == 0);  // gamma^0 neither commutes nor anticommutes with -i gamma^mu d_mu
  CHECK(rep.ok());
}

TEST_CASE_FIXTURE(Fixture, "construction rejects twist data that fails an invariant") {
  Triple m = manifold_triple();
  // The grading itself fixes each leg, so it cannot exchange them.
  CHECK_THROWS_AS(twist_by_grading(m, gamma5()), std::invalid_argument);
  CHECK_THROWS_AS(twist_by_grading(m, Mat::identity(4)), std::invalid_argument);
  // Not unitary.
  CHECK_THROWS_AS(twist_by_grading(m, Mat::identity(4) * Scalar(2)), std::invalid_argument);
  // Splitter must be a selfadjoint involution with both eigenvalues.
  CHECK_THROWS_AS(minimal_twist(m, gamma(0) * gamma(1), gamma(0)), std::invalid_argument);
  CHECK_THROWS_AS(minimal_twist(m, Mat::identity(4), gamma(0)), std::invalid_argument);
}

TEST_CASE_FIXTURE(Fixture, "twisted commutator is bounded where the plain one is not") {
  TwistedTriple t = twisted_flat();
  Mat a = t.base.generic_rep("a");

  OperatorExpr plain = germ_commutator(t.base.d, a);
  CHECK_FALSE(plain.is_bounded());

  OperatorExpr tw = twisted_commutator(t.base.d, a, t);
  CHECK(tw.is_bounded());
  CHECK_FALSE(tw.is_zero());

  // Equal legs give the untwisted algebra, whose plain commutator is bounded.
  Mat diag = t.pair_rep("h", "h");
  CHECK(germ_commutator(t.base.d, diag).is_bounded());

  // Identity exchange unitary reduces the twisted commutator to the plain one.
  CHECK(twisted_commutator(t.base.d, diag, Mat::identity(4)) == germ_commutator(t.base.d, diag));
}

TEST_CASE_FIXTURE(Fixture, "twisted first-order condition holds for the twisted flat geometry") {
  TwistedTriple t = twisted_flat();
  ConstraintSet cs = check_twisted_first_order(t);
  CHECK(cs.satisfied());

  // The plain first-order condition fails on the doubled representation.
  CHECK_FALSE(check_first_order(t.base));
}

TEST_CASE_FIXTURE(Fixture, "constant operators anticommuting with the splitter twist-commute") {
  TwistedTriple t = twisted_flat();
  Mat a = t.base.generic_rep("a");
  for (int mu = 0; mu < 4; ++mu) {
    OperatorExpr x = OperatorExpr::order_zero(gamma(mu));
    CHECK(twisted_commutator(x, a, t).is_zero());
  }
  // An operator commuting with the splitter does not.
  CHECK_FALSE(twisted_commutator(OperatorExpr::order_zero(gamma5()), a, t).is_zero());
}

TEST_CASE_FIXTURE(Fixture, "twisted Leibniz rule") {
  TwistedTriple t = twisted_flat();
  Mat a = t.base.generic_rep("la");
  Mat b = t.base.generic_rep("lb");
  OperatorExpr lhs = twisted_commutator(t.base.d, a * b, t);
  OperatorExpr rhs = twisted_commutator(t.base.d, a, t) * OperatorExpr::order_zero(b) +
                     OperatorExpr::order_zero(t.rho(a)) * twisted_commutator(t.base.d, b, t);
  CHECK(lhs == rhs);
}

TEST_CASE_FIXTURE(Fixture, "rho on operator expressions conjugates coefficientwise") {
  TwistedTriple t = twisted_flat();
  OperatorExpr d = dirac_free();
  OperatorExpr rd = t.rho(d);
  CHECK(rd.order1(0) == d.order1(0));
  for (int j = 1; j < 4; ++j) CHECK(rd.order1(j) == -d.order1(j));
}

TEST_CASE_FIXTURE(Fixture, "rho product is the gamma^0 pairing with signature (2,2)") {
  TwistedTriple t = twisted_flat();
  CHECK(r_signature(t.r) == std::pair<int, int>{2, 2});

  Mat psi(4, 1), phi(4, 1);
  psi.at(0, 0) = Scalar(1);
  phi.at(2, 0) = Scalar(1);
  // gamma^0 swaps the chiral halves: <e0, gamma^0 e2> = 1, <e0, gamma^0 e0> = 0.
  CHECK(rho_product(t, psi, phi) == Scalar(1));
  CHECK(rho_product(t, psi, psi) == Scalar(0));

  // General vectors: the pairing is psi^dag gamma^0 phi entrywise.
  for (int k = 0; k < 5; ++k) {
    Mat x(4, 1), y(4, 1);
    for (int i = 0; i < 4; ++i) {
      x.at(i, 0) = Scalar(rand_gauss());
      y.at(i, 0) = Scalar(rand_gauss());
    }
    CHECK(rho_product(t, x, y) == (x.adjoint() * gamma(0) * y).at(0, 0));
  }
}

TEST_CASE_FIXTURE(Fixture, "rho adjoint: inverse of a unitary, and covariance") {
  TwistedTriple t = twisted_flat();
  for (int k = 0; k < 10; ++k) {
    Mat u = rand_unitary(4);
    CHECK(rho_adjoint(t, u.inverse_constant()) == t.rho(u));

    // Conjugation by (rho(u), u^-1) preserves rho-adjoints.
    Mat x = rand_const_mat(4);
    Mat moved = t.rho(u) * x * u.inverse_constant();
    CHECK(rho_adjoint(t, moved) == t.rho(u) * rho_adjoint(t, x) * u.inverse_constant());
  }
}

TEST_CASE_FIXTURE(Fixture, "closure of subalgebras under the twist") {
  TwistedTriple t = twisted_flat();

  // The full doubled algebra is closed: the twist just exchanges the legs.
  auto full = [&t](const std::string& p) { return t.pair_rep(p + ".1", p + ".2"); };
  ClosureResult r1 = check_closure_under_twist(t, full, "cl1");
  CHECK(r1.closed);
  CHECK(r1.solution.feasible);
  CHECK(r1.constraints.satisfied());

  // The diagonal (equal legs) is fixed pointwise, hence closed.
  auto diag = [&t](const std::string& p) { return t.pair_rep(p + ".d", p + ".d"); };
  CHECK(check_closure_under_twist(t, diag, "cl2").closed);

  // Legs locked in ratio 1:2 are not closed: the exchanged element fits the
  // form only when the function vanishes.
  auto skew = [](const std::string& p) {
    Scalar f{Symbols::ensure(p + ".f", SymbolKind::Complex)};
    return Mat::diag({f, f, 2 * f, 2 * f});
  };
  ClosureResult r3 = check_closure_under_twist(t, skew, "cl3");
  CHECK_FALSE(r3.closed);
  CHECK(r3.solution.feasible);
  CHECK(r3.constraints.size() == 1);
  CHECK(r3.constraints.polys()[0] == Scalar(Symbols::lookup("cl3.s.f")));
  CHECK(r3.witness.rows() == 4);

  // Two entries tied on one leg, free on the other: closure forces the two
  // free parameters to agree, a nontrivial constraint rather than collapse.
  auto tied = [](const std::string& p) {
    Symbol a = Symbols::ensure(p + ".a", SymbolKind::Complex);
    Symbol b = Symbols::ensure(p + ".b", SymbolKind::Complex);
    Symbol c = Symbols::ensure(p + ".c", SymbolKind::Complex);
    return Mat::diag({Scalar(a), Scalar(a), Scalar(b), Scalar(c)});
  };
  ClosureResult r4 = check_closure_under_twist(t, tied, "cl4");
  CHECK_FALSE(r4.closed);
  CHECK(r4.solution.feasible);
  CHECK(r4.constraints.size() == 1);
  Scalar expect = Scalar(Symbols::lookup("cl4.s.b")) - Scalar(Symbols::lookup("cl4.s.c"));
  CHECK(r4.constraints.polys()[0] == expect);
}
