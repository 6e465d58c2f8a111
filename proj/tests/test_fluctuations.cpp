#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncg/fluctuations.hpp"

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

// Exact unit-modulus rational: (it - 1)/(it + 1) for random rational t.
Scalar unit_phase() {
  Rat t = rand_rat();
  Rat den = t * t + 1;
  return Scalar(GaussRat((t * t - 1) / den, (t + t) / den));
}

TwistedTriple twisted_flat() { return twist_by_grading(manifold_triple(), gamma(0)); }

// Random constant element of a one-form space.  The gauge conjugation
// identity needs honest one-forms: only they commute suitably with the
// opposite algebra.
Mat random_one_form(const OneFormSpace& ofs) {
  Mat a(ofs.basis.at(0).rows(), ofs.basis.at(0).cols());
  for (const Mat& b : ofs.basis) a += b * Scalar(rand_gauss());
  return a;
}

// Finite toy triple used for gauge-group checks: M_2(C) acting on C^2 x C^2
// as a x 1, real structure = leg swap composed with conjugation (so the
// opposite action is 1 x b^T), D = s1 x 1 + 1 x s1.  Order-zero and
// first-order hold, J D J^-1 = D.  The grading slot is unused here.
Triple toy_triple() {
  Triple t;
  t.n = 4;
  Mat swap(4, 4);
  swap.at(0, 0) = swap.at(1, 2) = swap.at(2, 1) = swap.at(3, 3) = Scalar(GaussRat(1));
  t.j = AntilinearOp(swap);
  t.d = OperatorExpr::order_zero(pauli(1).kron(Mat::identity(2)) +
                                 Mat::identity(2).kron(pauli(1)));
  t.grading = Mat::identity(4);
  t.generic_rep = [](const std::string& prefix) {
    Mat a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Symbol s = Symbols::ensure(prefix + ".e" + std::to_string(i) + std::to_string(j),
                                   SymbolKind::Complex);
        Symbols::register_gradient(s);
        a.at(i, j) = Scalar(s);
      }
    return a.kron(Mat::identity(2));
  };
  return t;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "one-forms of the flat geometry span the gamma matrices") {
  Triple m = manifold_triple();
  OneFormSpace ofs = one_form_space(m, m.d, "u1");
  CHECK(ofs.dim() == 4);
  SpanBasis sb(4, 4);
  for (const Mat& dir : ofs.basis) sb.add(dir);
  for (int mu = 0; mu < 4; ++mu) CHECK(sb.contains(gamma(mu)));
  CHECK_FALSE(sb.contains(gamma5()));

  // Generic one-form is never selfadjoint unless zero: the family is empty.
  FluctuationFamily fam = selfadjoint_family(m, m.d, "u1f");
  CHECK(fam.dim() == 0);
  CHECK(fam.potential().is_zero());
  CHECK(fam.member() == m.d);
}

TEST_CASE_FIXTURE(Fixture, "twisted one-forms split over the chiral projections") {
  TwistedTriple t = twisted_flat();
  OneFormSpace ofs = one_form_space(t, t.base.d, "t1");
  CHECK(ofs.dim() == 8);

  const Mat id = Mat::identity(4);
  const Mat pp = (id + gamma5()) * Scalar(GaussRat(Rat(1, 2)));
  const Mat pm = (id - gamma5()) * Scalar(GaussRat(Rat(1, 2)));
  SpanBasis sb(4, 4);
  for (const Mat& dir : ofs.basis) sb.add(dir);
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(sb.contains(gamma(mu) * pp));
    CHECK(sb.contains(gamma(mu) * pm));
  }
}

TEST_CASE_FIXTURE(Fixture, "selfadjoint twisted fluctuations of the flat Dirac operator") {
  TwistedTriple t = twisted_flat();
  FluctuationFamily fam = selfadjoint_family(t, t.base.d, "tf");
  CHECK(fam.dim() == 4);

  // Directions and { i gamma5 gamma^mu } span the same real vector space.
  SpanBasis got(4, 4, true), expect(4, 4, true);
  for (const Mat& dir : fam.directions) {
    CHECK(dir.adjoint() == dir);
    got.add(dir);
  }
  for (int mu = 0; mu < 4; ++mu) expect.add(gamma5() * gamma(mu) * Scalar(GaussRat::i()));
  CHECK(got.rank() == 4);
  CHECK(expect.rank() == 4);
  for (const Mat& dir : fam.directions) CHECK(expect.contains(dir));
  for (int mu = 0; mu < 4; ++mu)
    CHECK(got.contains(gamma5() * gamma(mu) * Scalar(GaussRat::i())));

  // Every member is selfadjoint identically in the real parameters.
  CHECK(fam.member().adjoint() == fam.member());
}

TEST_CASE_FIXTURE(Fixture, "fluctuation adds the potential and its conjugate") {
  Triple m = manifold_triple();
  CHECK(fluctuate(m, Mat(4, 4)) == m.d);

  Mat a = rand_const_mat(4);
  OperatorExpr da = fluctuate(m, a);
  CHECK(da.order0() == a + m.j.sandwich(a));
  for (int mu = 0; mu < 4; ++mu) CHECK(da.order1(mu) == m.d.order1(mu));

  TwistedTriple t = twisted_flat();
  Mat b = rand_const_mat(4);
  CHECK(fluctuate(t, b).order0() == b + t.base.j.sandwich(b));
}

TEST_CASE_FIXTURE(Fixture, "twist transparency distinguishes operator parts") {
  TwistedTriple t = twisted_flat();
  for (int mu = 0; mu < 4; ++mu)
    CHECK(check_transparency(t, OperatorExpr::order_zero(gamma(mu))));
  CHECK_FALSE(check_transparency(t, t.base.d));
  CHECK_FALSE(check_transparency(t, OperatorExpr::order_zero(gamma5())));

  // Untwisted: constants commute with the scalar action, derivatives do not.
  Triple m = manifold_triple();
  CHECK(check_transparency(m, OperatorExpr::order_zero(gamma5())));
  CHECK_FALSE(check_transparency(m, m.d));
}

TEST_CASE_FIXTURE(Fixture, "the unit gauge element fixes every potential") {
  Triple toy = toy_triple();
  Mat a = rand_const_mat(4);
  CHECK(gauge_transform(toy, a, Mat::identity(4)) == a);

  TwistedTriple t = twisted_flat();
  Mat b = rand_const_mat(4);
  CHECK(gauge_transform(t, b, Mat::identity(4)) == b);
}

TEST_CASE_FIXTURE(Fixture, "gauge transformations compose as a right action") {
  Triple toy = toy_triple();
  for (int trial = 0; trial < 3; ++trial) {
    Mat u = rand_unitary(2).kron(Mat::identity(2));
    Mat v = rand_unitary(2).kron(Mat::identity(2));
    Mat a = rand_const_mat(4);
    Mat once = gauge_transform(toy, gauge_transform(toy, a, u), v);
    CHECK(once == gauge_transform(toy, a, v * u));
  }
}

TEST_CASE_FIXTURE(Fixture, "twisted gauge transformations compose as a right action") {
  TwistedTriple t = twisted_flat();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Scalar> du = {unit_phase(), unit_phase()};
    std::vector<Scalar> dv = {unit_phase(), unit_phase()};
    Mat u = Mat::diag({du[0], du[0], du[1], du[1]});
    Mat v = Mat::diag({dv[0], dv[0], dv[1], dv[1]});
    Mat a = rand_const_mat(4);
    Mat once = gauge_transform(t, gauge_transform(t, a, u), v);
    CHECK(once == gauge_transform(t, a, v * u));
  }
}

TEST_CASE_FIXTURE(Fixture, "conjugating the covariant operator matches the transformed potential") {
  Triple toy = toy_triple();
  OneFormSpace toy_forms = one_form_space(toy, toy.d, "gc");
  for (int trial = 0; trial < 3; ++trial) {
    Mat u = rand_unitary(2).kron(Mat::identity(2));
    CHECK(check_gauge_conjugation(toy, random_one_form(toy_forms), u));
  }

  TwistedTriple t = twisted_flat();
  OneFormSpace tw_forms = one_form_space(t, t.base.d, "gt");
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Scalar> z = {unit_phase(), unit_phase()};
    Mat u = Mat::diag({z[0], z[0], z[1], z[1]});
    CHECK(check_gauge_conjugation(t, random_one_form(tw_forms), u));
  }
}

TEST_CASE_FIXTURE(Fixture, "twisted conjugation holds for symbolic phase unitaries") {
  TwistedTriple t = twisted_flat();
  OneFormSpace tw_forms = one_form_space(t, t.base.d, "gs");
  Scalar p(Symbols::make_phase("gcp", "gcp.th"));
  Scalar q(Symbols::make_phase("gcq", "gcq.th"));
  Mat u = Mat::diag({p, p, q, q});
  CHECK(check_gauge_conjugation(t, random_one_form(tw_forms), u));
}

TEST_CASE_FIXTURE(Fixture, "fluctuating a fluctuated operator yields the same one-forms") {
  Triple toy = toy_triple();
  Mat ac = rand_const_mat(2), bc = rand_const_mat(2);
  Mat a0 = (ac * (pauli(1) * bc - bc * pauli(1))).kron(Mat::identity(2));

  Triple moved = toy;
  moved.d = fluctuate(toy, a0);
  OneFormSpace before = one_form_space(toy, toy.d, "fa");
  OneFormSpace after = one_form_space(moved, moved.d, "fb");

  CHECK(before.dim() == after.dim());
  SpanBasis sb_before(4, 4), sb_after(4, 4);
  for (const Mat& dir : before.basis) sb_before.add(dir);
  for (const Mat& dir : after.basis) sb_after.add(dir);
  for (const Mat& dir : before.basis) CHECK(sb_after.contains(dir));
  for (const Mat& dir : after.basis) CHECK(sb_before.contains(dir));

  // Fluctuating twice accumulates potentials additively.
  Mat a1 = rand_const_mat(4);
  CHECK(fluctuate(moved, a1) == fluctuate(toy, a0 + a1));
}

TEST_CASE_FIXTURE(Fixture, "one-form extraction is deterministic per tag") {
  Triple m = manifold_triple();
  OneFormSpace first = one_form_space(m, m.d, "det");
  OneFormSpace second = one_form_space(m, m.d, "det");
  CHECK(first.basis == second.basis);
  REQUIRE(first.coeffs.size() == second.coeffs.size());
  for (std::size_t k = 0; k < first.coeffs.size(); ++k)
    CHECK(first.coeffs[k] == second.coeffs[k]);
}
