#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/triples.hpp"

using namespace ncg;

namespace {

struct Fixture {
  Fixture() { Symbols::reset(); }
};

// Scalars acting on C^2 with an off-diagonal selfadjoint operator; all three
// real-structure signs +1.
Triple toy_finite() {
  Triple t;
  t.n = 2;
  t.generic_rep = [](const std::string& p) {
    Symbol l = Symbols::ensure(p + ".l", SymbolKind::Complex);
    return Mat::identity(2) * Scalar(l);
  };
  t.d = OperatorExpr::order_zero(Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}));
  t.grading = Mat::diag({Scalar(1), Scalar(-1)});
  t.j = AntilinearOp(Mat::identity(2));
  return t;
}

// A two-sheet fibre whose real structure swaps the sheets and anticommutes
// with the grading; sign pattern (+1, +1, -1).
Triple toy_ko6() {
  Triple t;
  t.n = 2;
  t.generic_rep = [](const std::string& p) {
    Symbol l = Symbols::ensure(p + ".l", SymbolKind::Complex);
    return Mat::diag({Scalar(l), Scalar(l).conj()});
  };
  t.d = OperatorExpr(2);
  t.grading = Mat::diag({Scalar(1), Scalar(-1)});
  t.j = AntilinearOp(Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}));
  return t;
}

}  // namespace

TEST_CASE("sign table for even KO dimensions") {
  Fixture fx;
  CHECK(ko_dimension(1, 1, 1) == 0);
  CHECK(ko_dimension(-1, 1, -1) == 2);
  CHECK(ko_dimension(-1, 1, 1) == 4);
  CHECK(ko_dimension(1, 1, -1) == 6);
  CHECK_FALSE(ko_dimension(1, -1, 1).has_value());
  CHECK_FALSE(ko_dimension(0, 1, 1).has_value());
}

TEST_CASE("flat spin geometry validates with KO dimension 4") {
  Fixture fx;
  Triple m = manifold_triple();
  TripleReport r = validate_triple(m);
  CHECK(r.d_selfadjoint);
  CHECK(r.commutators_bounded);
  CHECK(r.grading_selfadjoint);
  CHECK(r.grading_squares);
  CHECK(r.grading_anticommutes_d);
  CHECK(r.grading_commutes_rep);
  CHECK(r.order_zero);
  CHECK(r.first_order);
  CHECK(r.eps == -1);
  CHECK(r.eps_prime == 1);
  CHECK(r.eps_dprime == 1);
  CHECK(r.ko_dim == 4);
  CHECK(r.ok());
}

TEST_CASE("finite toy triples validate") {
  Fixture fx;
  TripleReport r0 = validate_triple(toy_finite());
  CHECK(r0.ok());
  CHECK(r0.ko_dim == 0);

  TripleReport r6 = validate_triple(toy_ko6());
  CHECK(r6.ok());
  CHECK(r6.eps == 1);
  CHECK(r6.eps_dprime == -1);
  CHECK(r6.ko_dim == 6);
}

TEST_CASE("violations are detected, not assumed away") {
  Fixture fx;
  // sheet-coupling operator with a sheet-distinguishing representation and a
  // pointwise real structure: the first-order condition genuinely fails
  Triple bad;
  bad.n = 2;
  bad.generic_rep = [](const std::string& p) {
    Symbol l1 = Symbols::ensure(p + ".l1", SymbolKind::Complex);
    Symbol l2 = Symbols::ensure(p + ".l2", SymbolKind::Complex);
    return Mat::diag({Scalar(l1), Scalar(l2)});
  };
  bad.d = OperatorExpr::order_zero(Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}));
  bad.grading = Mat::diag({Scalar(1), Scalar(-1)});
  bad.j = AntilinearOp(Mat::identity(2));
  TripleReport r = validate_triple(bad);
  CHECK(r.order_zero);
  CHECK_FALSE(r.first_order);
  CHECK_FALSE(r.ok());

  // a non-selfadjoint operator is flagged
  Triple skew = toy_finite();
  skew.d = OperatorExpr::order_zero(Mat::of({{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}}));
  CHECK_FALSE(validate_triple(skew).d_selfadjoint);

  // a grading that fails to commute with the representation is flagged
  Triple off = toy_ko6();
  off.grading = Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
  TripleReport ro = validate_triple(off);
  CHECK_FALSE(ro.grading_commutes_rep);
}

TEST_CASE("product with the flat geometry") {
  Fixture fx;
  Triple p = product_triple(manifold_triple(), toy_finite());
  CHECK(p.n == 8);
  // operator structure: first-order part acts on spinors only, the finite
  // operator is hung on the manifold grading
  for (int mu = 0; mu < 4; ++mu)
    CHECK(p.d.order1(mu) == (gamma(mu) * -Scalar::i()).kron(Mat::identity(2)));
  CHECK(p.d.order0() ==
        gamma5().kron(Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}})));

  TripleReport r = validate_triple(p);
  CHECK(r.ok());
  CHECK(r.ko_dim == 4);  // 4 + 0
}

TEST_CASE("product KO dimensions add modulo 8") {
  Fixture fx;
  TripleReport r = validate_triple(product_triple(manifold_triple(), toy_ko6()));
  CHECK(r.ok());
  CHECK(r.eps == -1);
  CHECK(r.eps_prime == 1);
  CHECK(r.eps_dprime == -1);
  CHECK(r.ko_dim == 2);  // 4 + 6 mod 8
}

TEST_CASE("first-order products are rejected as second factor") {
  Fixture fx;
  CHECK_THROWS(product_triple(manifold_triple(), manifold_triple()));
}
