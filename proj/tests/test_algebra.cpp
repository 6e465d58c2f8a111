#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/algebra.hpp"

using namespace ncg;

namespace {

struct Fixture {
  Fixture() { Symbols::reset(); }
};

}  // namespace

TEST_CASE("index scheme flattening") {
  Fixture fx;
  IndexScheme sch({{"a", 2}, {"b", 3}, {"c", 2}});
  CHECK(sch.dim() == 12);
  CHECK(sch.slot_dim("b") == 3);
  for (int f = 0; f < 12; ++f) CHECK(sch.flatten(sch.unflatten(f)) == f);
  CHECK(sch.flatten({1, 2, 0}) == 1 * 6 + 2 * 2 + 0);
  CHECK_THROWS(sch.flatten({2, 0, 0}));
  CHECK_THROWS(IndexScheme({{"a", 2}, {"a", 3}}));
}

TEST_CASE("placement on slot subsets") {
  Fixture fx;
  IndexScheme sch({{"a", 2}, {"b", 3}});
  Mat x = Mat::of({{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}});
  Mat y(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y.at(i, j) = Scalar(10 * i + j + 1);

  CHECK(sch.place({"a"}, x) == x.kron(Mat::identity(3)));
  CHECK(sch.place({"b"}, y) == Mat::identity(2).kron(y));
  CHECK(sch.place({"a", "b"}, x.kron(y)) == x.kron(y));

  // listed order need not be declaration order: the small matrix is indexed in
  // the listed order, the result in the declared one
  Mat w(6, 6);
  w.at(0 * 2 + 1, 2 * 2 + 0) = Scalar(7);  // (b=0,a=1) <- (b=2,a=0)
  Mat placed = sch.place({"b", "a"}, w);
  CHECK(placed.at(sch.flatten({1, 0}), sch.flatten({0, 2})) == Scalar(7));
  int nonzero = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!placed.at(i, j).is_zero()) ++nonzero;
  CHECK(nonzero == 1);

  CHECK_THROWS(sch.place({"a", "a"}, Mat::identity(4)));
  CHECK_THROWS(sch.place({"a"}, Mat::identity(3)));
}

TEST_CASE("slot projectors resolve the identity") {
  Fixture fx;
  IndexScheme sch({{"a", 2}, {"b", 3}});
  Mat sum(6, 6);
  for (int v = 0; v < 3; ++v) {
    Mat p = sch.slot_projector("b", v);
    CHECK(p * p == p);
    sum += p;
  }
  CHECK(sum == Mat::identity(6));
  // projector commutes with a placement on a disjoint slot
  Mat x = Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
  Mat pa = sch.slot_projector("b", 1);
  CHECK(pa * sch.place({"a"}, x) == sch.place({"a"}, x) * pa);
}

TEST_CASE("quaternion embedding is a *-subalgebra") {
  Fixture fx;
  Symbol a = Symbols::make("q.a", SymbolKind::Complex);
  Symbol b = Symbols::make("q.b", SymbolKind::Complex);
  Symbol c = Symbols::make("r.a", SymbolKind::Complex);
  Symbol d = Symbols::make("r.b", SymbolKind::Complex);
  Mat q = quaternion_block(a, b), r = quaternion_block(c, d);

  // closure of the product under the embedding shape
  Mat qr = q * r;
  CHECK(qr.at(1, 1) == qr.at(0, 0).conj());
  CHECK(qr.at(1, 0) == -qr.at(0, 1).conj());
  // the adjoint is the quaternion conjugate, and q q* is the squared norm
  Mat qq = q * q.adjoint();
  Scalar n2 = Scalar(a) * Scalar(a).conj() + Scalar(b) * Scalar(b).conj();
  CHECK(qq == Mat::identity(2) * n2);
}

TEST_CASE("finite algebra elements: product, star, canonical representation") {
  Fixture fx;
  FiniteAlgebra alg({{"l", FactorType::C, 1}, {"q", FactorType::H, 1}, {"m", FactorType::MnC, 3}});
  AlgebraElement x = alg.generic("x"), y = alg.generic("y");
  CHECK(x.params.size() == 1 + 2 + 9);
  CHECK(alg.direct_sum_dim() == 1 + 2 + 3);

  Mat rx = alg.direct_sum_rep(x), ry = alg.direct_sum_rep(y);
  CHECK(alg.direct_sum_rep(alg.product(x, y)) == rx * ry);
  CHECK(alg.direct_sum_rep(alg.star(x)) == rx.adjoint());
  // (xy)* = y* x*
  auto lhs = alg.star(alg.product(x, y));
  auto rhs = alg.product(alg.star(y), alg.star(x));
  CHECK(alg.direct_sum_rep(lhs) == alg.direct_sum_rep(rhs));
  // identity element
  CHECK(alg.direct_sum_rep(alg.product(alg.one(), x)) == rx);

  // generic is deterministic: same prefix, same symbols
  AlgebraElement x2 = alg.generic("x");
  CHECK(alg.direct_sum_rep(x2) == rx);
}

TEST_CASE("unitary group dimensions of the standard factors") {
  Fixture fx;
  auto dim_of = [](std::vector<AlgebraFactor> fs, const std::string& p) {
    return unitary_group_dim(FiniteAlgebra(std::move(fs)), p);
  };
  CHECK(dim_of({{"c", FactorType::C, 1}}, "u1") == 1);
  CHECK(dim_of({{"q", FactorType::H, 1}}, "u2") == 3);
  CHECK(dim_of({{"m", FactorType::MnC, 2}}, "u3") == 4);
  CHECK(dim_of({{"m", FactorType::MnC, 3}}, "u4") == 9);
  CHECK(dim_of({{"m", FactorType::MnH, 2}}, "u5") == 10);
  // direct sums add up
  CHECK(dim_of({{"l", FactorType::C, 1}, {"q", FactorType::H, 1}, {"m", FactorType::MnC, 3}},
               "u6") == 13);
}
