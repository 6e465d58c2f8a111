#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "ncg/models.hpp"

using namespace ncg;
using namespace ncg::models;

namespace {

// Exact unit-modulus value ((t^2-1) + 2ti) / (t^2+1).
Scalar unit_phase(int t) {
  GaussRat num(Rat(t * t - 1), Rat(2 * t));
  GaussRat den(Rat(t * t + 1), Rat(0));
  return Scalar(num / den);
}

std::vector<Mat> all_directions(const FieldDirections& d) {
  std::vector<Mat> out = d.f;
  out.insert(out.end(), d.g.begin(), d.g.end());
  return out;
}

bool same_real_span(const std::vector<Mat>& a, const std::vector<Mat>& b, int n) {
  SpanBasis sa(n, n, true), sb(n, n, true);
  for (const Mat& m : a) sa.add(m);
  for (const Mat& m : b) sb.add(m);
  if (sa.rank() != sb.rank()) return false;
  for (const Mat& m : a)
    if (!sb.contains(m)) return false;
  for (const Mat& m : b)
    if (!sa.contains(m)) return false;
  return true;
}

// hr: fixed vectors of the twist unitary; hplus: +1 eigenvectors of the
// grading.  Both must have the advertised count and span the full eigenspace.
void check_half_bases(const Model& m) {
  const Mat& r = m.twist->r;
  const Mat& g = m.twist->base.grading;
  const int n = r.rows();
  REQUIRE(static_cast<int>(m.hr_basis.size()) == n / 2);
  REQUIRE(static_cast<int>(m.hplus_basis.size()) == n / 2);

  SpanBasis hr(n, 1, true), hp(n, 1, true);
  for (const Mat& v : m.hr_basis) {
    CHECK(r * v == v);
    CHECK(hr.add(v));
  }
  for (const Mat& v : m.hplus_basis) {
    CHECK(g * v == v);
    CHECK(hp.add(v));
  }
  Mat fixed_r = Mat::identity(n) + r;
  Mat fixed_g = Mat::identity(n) + g;
  for (int j = 0; j < n; ++j) {
    CHECK(hr.contains(fixed_r.block(0, j, n, 1)));
    CHECK(hp.contains(fixed_g.block(0, j, n, 1)));
  }
}

}  // namespace

TEST_CASE("catalogue is consistent") {
  const auto& names = model_names();
  REQUIRE(names.size() == 8);
  for (const auto& name : names) {
    Model m = build_model(name);
    CHECK(m.name == name);
    CHECK(m.summary == model_summary(name));
    CHECK(!m.expected.empty());
  }
  CHECK_THROWS_AS(build_model("no-such-model"), std::invalid_argument);
  CHECK_THROWS_AS(model_summary("no-such-model"), std::invalid_argument);
  CHECK_THROWS_AS(build_model("btilde", 2), std::invalid_argument);
  CHECK_THROWS_AS(build_model("grand", 3), std::invalid_argument);
  CHECK_THROWS_AS(grading_break("sm"), std::invalid_argument);
}

TEST_CASE("builders are deterministic") {
  Model a = build_model("btilde"), b = build_model("btilde");
  CHECK(a.twist->base.d == b.twist->base.d);
  CHECK(a.twist->base.generic_rep("det.x") == b.twist->base.generic_rep("det.x"));
  Model c = build_model("ed"), d = build_model("ed");
  CHECK(c.twist->r == d.twist->r);
  CHECK(c.plain->d == d.plain->d);
}

TEST_CASE("internal fibre: structure and real form") {
  FiniteModel f = finite_sm(1);
  CHECK(f.dim() == 32);

  // representation is multiplicative and star-preserving
  AlgebraElement x = f.algebra.generic("fsm.x");
  AlgebraElement y = f.algebra.generic("fsm.y");
  CHECK(f.rep(f.algebra.product(x, y)) == f.rep(x) * f.rep(y));
  CHECK(f.rep(f.algebra.star(x)) == f.rep(x).adjoint());

  Triple t = f.triple();
  TripleReport r = validate_triple(t);
  CHECK(r.ok());
  CHECK(r.eps == 1);
  CHECK(r.eps_prime == 1);
  CHECK(r.eps_dprime == -1);
  REQUIRE(r.ko_dim.has_value());
  CHECK(*r.ko_dim == 6);
}

TEST_CASE("internal fibre: three generations") {
  FiniteModel f = finite_sm(3);
  CHECK(f.dim() == 96);
  TripleReport r = validate_triple(f.triple());
  CHECK(r.ok());
  REQUIRE(r.ko_dim.has_value());
  CHECK(*r.ko_dim == 6);
}

TEST_CASE("mass fibre") {
  FiniteModel f = finite_ed();
  CHECK(f.dim() == 4);
  TripleReport r = validate_triple(f.triple());
  CHECK(r.ok());
  REQUIRE(r.ko_dim.has_value());
  CHECK(*r.ko_dim == 6);
}

TEST_CASE("expected checks hold for every model") {
  for (const auto& name : model_names()) {
    Model m = build_model(name);
    auto got = check_model(m);
    for (const auto& kv : m.expected) {
      const std::string label = name + ":" + kv.first;
      CAPTURE(label);
      CHECK(got.at(kv.first) == kv.second);
    }
  }
}

TEST_CASE("flat geometry: fluctuation family and half bases") {
  Model m = build_model("manifold-twist");
  FluctuationFamily fam = selfadjoint_family(*m.twist, m.twist->base.d, "mff");
  CHECK(fam.dim() == 4);
  CHECK(same_real_span(fam.directions, all_directions(manifold_field_directions()), 4));

  // without the twist the selfadjoint fluctuations of the free operator vanish
  FluctuationFamily plain = selfadjoint_family(*m.plain, m.plain->d, "mfp");
  CHECK(plain.dim() == 0);

  check_half_bases(m);
}

TEST_CASE("doubled geometry: fluctuation family and half bases") {
  Model m = build_model("doubled-manifold");
  TripleReport r = validate_triple(*m.plain);
  CHECK(r.ok());
  REQUIRE(r.ko_dim.has_value());
  CHECK(*r.ko_dim == 2);

  FluctuationFamily fam = selfadjoint_family(*m.twist, m.twist->base.d, "dff");
  CHECK(fam.dim() == 8);
  CHECK(same_real_span(fam.directions, all_directions(doubled_field_directions()), 8));

  check_half_bases(m);
}

TEST_CASE("mass-coupled doubled geometry: family, transparency, gauge shift") {
  Model m = build_model("ed");
  TripleReport rep = validate_triple(*m.plain);
  CHECK(rep.ok());
  REQUIRE(rep.ko_dim.has_value());
  CHECK(*rep.ko_dim == 2);
  CHECK(m.plain->d == m.d_total());

  const TwistedTriple& t = *m.twist;
  FluctuationFamily fam = selfadjoint_family(t, t.base.d, "edf");
  CHECK(fam.dim() == 8);
  FieldDirections dirs = ed_field_directions();
  CHECK(same_real_span(fam.directions, all_directions(dirs), 16));

  check_half_bases(m);

  // gauge transformation by u = (a, a), a = (1, phase): the vector component
  // shifts by the gradient of the angle, the axial component is untouched.
  Symbol ph = Symbols::make_phase("gax.u", "gax.th");
  Mat u = ed_pair_rep(Scalar(1), Scalar(ph), Scalar(1), Scalar(ph));
  Mat a0 = fam.potential();
  Mat a1 = gauge_transform(t, a0, u);
  Mat delta = a1 - a0;

  Mat lower = Mat::diag({Scalar(0), Scalar(0), Scalar(1), Scalar(1)});
  Mat want_delta(16, 16);
  std::array<Scalar, 4> dth;
  for (int mu = 0; mu < 4; ++mu) {
    dth[mu] = Scalar(Symbols::lookup("gax.th.d" + std::to_string(mu)));
    want_delta = want_delta - dth[mu] * gamma(mu).kron(lower);
  }
  CHECK(delta == want_delta);

  // after adding the conjugate half, the shift is exactly along the vector
  // field directions with coefficient d_mu(theta)
  Mat eff = delta + t.base.j.sandwich(delta);
  Mat want_eff(16, 16);
  for (int mu = 0; mu < 4; ++mu) want_eff = want_eff + dth[mu] * dirs.g[mu];
  CHECK(eff == want_eff);

  // numeric unitaries: covariance of the fluctuated operator
  Mat a_num(16, 16);
  int c = 1;
  for (const Mat& d : fam.directions) {
    a_num = a_num + Scalar(((c % 5) - 2)) * d;
    ++c;
  }
  std::vector<Mat> draws = {
      ed_pair_rep(Scalar(1), unit_phase(2), Scalar(1), unit_phase(2)),
      ed_pair_rep(unit_phase(3), Scalar(1), unit_phase(3), unit_phase(5)),
      ed_pair_rep(unit_phase(2), unit_phase(3), unit_phase(4), unit_phase(5)),
  };
  for (const Mat& un : draws) {
    CHECK(un.is_unitary());
    CHECK(check_gauge_conjugation(t, a_num, un));
  }
}

TEST_CASE("electroweak-strong product: real form and operator split") {
  Model m = build_model("sm");
  CHECK(m.plain->n == 128);
  TripleReport r = validate_triple(*m.plain);
  CHECK(r.ok());
  CHECK(r.eps == -1);
  CHECK(r.eps_prime == 1);
  CHECK(r.eps_dprime == -1);
  REQUIRE(r.ko_dim.has_value());
  CHECK(*r.ko_dim == 2);
  CHECK(m.plain->d == m.d_total());

  Model m2 = build_model("sm", 2);
  CHECK(m2.plain->n == 256);
  CHECK(validate_triple(*m2.plain).ok());
}

TEST_CASE("two-sector algebra: reductions") {
  BreakResult g = grading_break("grand");
  CHECK(g.ok);
  CHECK(g.real_dim == 96);
  CHECK(g.structure == "M2(H)_L ⊕ M2(H)_R ⊕ M4(C)_l ⊕ M4(C)_r");

  BreakResult c = grading_break("grand-chiral");
  CHECK(c.ok);
  CHECK(c.real_dim == 80);
  CHECK(c.structure == "H_L^l ⊕ H_L^r ⊕ H_R^l ⊕ H_R^r ⊕ M4(C)^l ⊕ M4(C)^r");

  BreakResult b = bounded_reduction_grand();
  CHECK(b.ok);
  CHECK(b.real_dim == 48);
  CHECK(b.structure == "M2(H) ⊕ M4(C)");
}

TEST_CASE("flip twist: residual first-order constraints of the singlet coupling") {
  Model m = build_model("btilde");
  ConstraintSet res = check_twisted_first_order(*m.twist, m.d_majorana);
  CHECK(!res.satisfied());
  REQUIRE(res.size() == 2u);

  Symbol fa = Symbols::lookup("chk.tfa.u.f"), fb = Symbols::lookup("chk.tfb.u.f");
  Symbol ca = Symbols::lookup("chk.tfa.u.c0");
  Symbol cal = Symbols::lookup("chk.tfa.u.cR"), car = Symbols::lookup("chk.tfa.v.cR");
  Symbol cb = Symbols::lookup("chk.tfb.u.c0");
  Symbol cbl = Symbols::lookup("chk.tfb.u.cR"), cbr = Symbols::lookup("chk.tfb.v.cR");

  ConstraintSet want;
  want.add(Scalar(fa) * Scalar(fb) * (Scalar(ca) - Scalar(cal)) * (Scalar(cb) - Scalar(cbr)));
  want.add(Scalar(fa) * Scalar(fb) * (Scalar(ca) - Scalar(car)) * (Scalar(cb) - Scalar(cbl)));
  CHECK(res == want);

  // the two vanishing branches: tie the scalar to one chirality on both sides
  auto branch = [&](Symbol a_tied, Symbol b_tied) {
    std::map<SymbolId, Scalar> bind;
    bind[ca.id] = Scalar(5);
    bind[a_tied.id] = Scalar(5);
    bind[cb.id] = Scalar(7);
    bind[b_tied.id] = Scalar(7);
    return bind;
  };
  CHECK(res.vanishes_under(branch(cal, cbl)));
  CHECK(res.vanishes_under(branch(car, cbr)));

  // mixing the branches does not annihilate the residual
  std::map<SymbolId, Scalar> off;
  off[ca.id] = Scalar(1);
  off[cal.id] = Scalar(2);
  off[car.id] = Scalar(3);
  off[cb.id] = Scalar(4);
  off[cbl.id] = Scalar(5);
  off[cbr.id] = Scalar(6);
  CHECK(!res.vanishes_under(off));

  // each generator factors into one linear condition per side
  std::map<SymbolId, Scalar> drop_germs;
  drop_germs[fa.id] = Scalar(1);
  drop_germs[fb.id] = Scalar(1);
  std::vector<SymbolId> xs = {ca.id, cal.id, car.id};
  std::vector<SymbolId> ys = {cb.id, cbl.id, cbr.id};
  std::vector<Scalar> linear = {ConstraintSet::normalize(Scalar(ca) - Scalar(cal)),
                                ConstraintSet::normalize(Scalar(ca) - Scalar(car)),
                                ConstraintSet::normalize(Scalar(cb) - Scalar(cbl)),
                                ConstraintSet::normalize(Scalar(cb) - Scalar(cbr))};
  for (const Scalar& p : res.polys()) {
    auto f2 = ConstraintSet::factor_bilinear(p.substitute(drop_germs), xs, ys);
    REQUIRE(f2.has_value());
    CHECK(std::count(linear.begin(), linear.end(), f2->first) == 1);
    CHECK(std::count(linear.begin(), linear.end(), f2->second) == 1);
  }
}

TEST_CASE("closure of subalgebras under the flip twist") {
  Model bt = build_model("btilde");
  ClosureResult neg = check_closure_under_twist(*bt.twist, b_subalgebra_rep(), "cls");
  CHECK(!neg.closed);
  REQUIRE(neg.constraints.size() == 2u);

  // the residual is one complex condition, presented split into its real and
  // imaginary parts: both chirality scalars must agree
  Scalar l = Scalar::sym("cls.s.l.cR"), r = Scalar::sym("cls.s.r.cR");
  ConstraintSet want;
  want.add(l + l.conj() - r - r.conj());
  want.add(l - l.conj() - r + r.conj());
  CHECK(neg.constraints == want);

  Scalar v(GaussRat(Rat(3), Rat(5)));
  std::map<SymbolId, Scalar> tied = {{Symbols::lookup("cls.s.l.cR").id, v},
                                     {Symbols::lookup("cls.s.r.cR").id, v}};
  CHECK(neg.constraints.vanishes_under(tied));
  std::map<SymbolId, Scalar> split = {{Symbols::lookup("cls.s.l.cR").id, v},
                                      {Symbols::lookup("cls.s.r.cR").id, Scalar(2)}};
  CHECK(!neg.constraints.vanishes_under(split));

  // positive control: the four-quaternion algebra maps onto itself
  Model bp = build_model("bprime");
  IndexScheme sch({{"s", 2}, {"sd", 2}, {"C", 2}, {"I", 4}, {"alpha", 4}});
  auto quat = [](const std::string& p) {
    return quaternion_block(Symbols::ensure(p + ".a", SymbolKind::Complex),
                            Symbols::ensure(p + ".b", SymbolKind::Complex));
  };
  auto bp_sub = [sch, quat](const std::string& p) {
    Mat leg_l = quat(p + ".lR").direct_sum(quat(p + ".lL"));
    Mat leg_r = quat(p + ".rR").direct_sum(quat(p + ".rL"));
    Mat m4(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m4.at(i, j) = Scalar(Symbols::ensure(
            p + ".m" + std::to_string(i) + std::to_string(j), SymbolKind::Complex));
    return sch.slot_projector("C", 0) * sch.place({"s", "alpha"}, leg_l.direct_sum(leg_r)) +
           sch.slot_projector("C", 1) * sch.place({"I"}, m4);
  };
  CHECK(check_closure_under_twist(*bp.twist, bp_sub, "clp").closed);
}
