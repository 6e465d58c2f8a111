#include "ncg/models.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace ncg::models {

namespace {

OperatorExpr oz(Mat m) { return OperatorExpr::order_zero(std::move(m)); }

Mat eij(int n, int i, int j) {
  Mat m(n, n);
  m.at(i, j) = Scalar(1);
  return m;
}

Scalar csym(const std::string& name) {
  return Scalar(Symbols::ensure(name, SymbolKind::Complex));
}

// A function germ: complex symbol with registered partial derivatives.
Scalar germ(const std::string& name) {
  Symbol s = Symbols::ensure(name, SymbolKind::Complex);
  Symbols::register_gradient(s);
  return Scalar(s);
}

// r[pos[i], pos[j]] = m[i, j], zero elsewhere.
Mat scatter(const Mat& m, const std::vector<int>& pos, int n) {
  Mat r(n, n);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) r.at(pos[i], pos[j]) = m.at(i, j);
  return r;
}

Mat generic_complex_block(const std::string& prefix, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = csym(prefix + "." + std::to_string(i) + std::to_string(j));
  return m;
}

Mat quaternion_of(const std::string& prefix) {
  return quaternion_block(Symbols::ensure(prefix + ".a", SymbolKind::Complex),
                          Symbols::ensure(prefix + ".b", SymbolKind::Complex));
}

// Collects the distinct nonzero entries; operators placed over identity
// slots repeat each constraint many times, and duplicate rows only slow the
// elimination down.
class EntryCollector {
 public:
  void add(const Mat& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        const Scalar& e = m.at(i, j);
        if (!e.is_zero() && seen_.insert(e.str()).second) eqs_.push_back(e);
      }
  }
  const std::vector<Scalar>& eqs() const { return eqs_; }

 private:
  std::set<std::string> seen_;
  std::vector<Scalar> eqs_;
};

}  // namespace

// ---------------------------------------------------------------------------
// fibres

Triple FiniteModel::triple() const {
  Triple t;
  t.n = dim();
  t.generic_rep = [alg = algebra, r = rep](const std::string& prefix) {
    return r(alg.generic(prefix));
  };
  t.d = oz(d_full());
  t.grading = grading;
  t.j = AntilinearOp(j_mat);
  return t;
}

FiniteModel finite_sm(int generations) {
  const int g = generations;
  if (g < 1) throw std::invalid_argument("finite_sm: generations must be >= 1");
  FiniteModel f;
  f.scheme = IndexScheme({{"C", 2}, {"I", 4}, {"alpha", 4}, {"gen", g}});
  f.algebra = FiniteAlgebra({{"l", FactorType::C, 1},
                             {"q", FactorType::H, 1},
                             {"m", FactorType::MnC, 3}});

  auto coupling = [g](const std::string& name) {
    if (g == 1) return Mat::of({{csym("fin." + name)}});
    return generic_complex_block("fin." + name, g);
  };
  Mat ynu = coupling("ynu"), ye = coupling("ye");
  Mat yu = coupling("yu"), yd = coupling("yd");

  // Self-conjugate coupling on the singlet cell; symmetric so that it
  // commutes with the real structure.
  Mat kr(g, g);
  if (g == 1) {
    Symbol k = Symbols::ensure("fin.kR", SymbolKind::Complex);
    Symbols::mark_nonvanishing(k.id);
    kr.at(0, 0) = Scalar(k);
  } else {
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        Scalar v = csym("fin.kR" + std::to_string(i) + std::to_string(j));
        kr.at(i, j) = v;
        kr.at(j, i) = v;
      }
  }

  // Mass coupling between the two weak doublets, per lepto-colour sector:
  // block (left row, right column) carries the couplings, adjoint opposite.
  auto doublet_coupling = [g](const Mat& y1, const Mat& y2) {
    Mat s(4 * g, 4 * g);
    s.set_block(2 * g, 0, y1);
    s.set_block(3 * g, g, y2);
    s.set_block(0, 2 * g, y1.adjoint());
    s.set_block(g, 3 * g, y2.adjoint());
    return s;
  };
  Mat slep = doublet_coupling(ynu, ye);
  Mat squark = doublet_coupling(yu, yd);
  Mat s16(16 * g, 16 * g);
  s16.set_block(0, 0, slep);
  for (int i = 1; i < 4; ++i) s16.set_block(i * 4 * g, i * 4 * g, squark);
  f.d_yukawa = eij(2, 0, 0).kron(s16) + eij(2, 1, 1).kron(s16.conj());

  Mat t16(16 * g, 16 * g);  // singlet cell: lepto-colour 0, flavour 0
  t16.set_block(0, 0, kr);
  f.d_majorana = eij(2, 1, 0).kron(t16) + eij(2, 0, 1).kron(t16.conj());

  Mat galpha = Mat::diag({Scalar(-1), Scalar(-1), Scalar(1), Scalar(1)});
  f.grading = Mat::diag({Scalar(1), Scalar(-1)})
                  .kron(Mat::identity(4))
                  .kron(galpha)
                  .kron(Mat::identity(g));
  f.j_mat = Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}})
                .kron(Mat::identity(16 * g));

  f.rep = [g](const AlgebraElement& e) {
    Scalar lam = e.factor.at("l").at(0, 0);
    Mat aalpha = Mat::diag({lam, lam.conj()}).direct_sum(e.factor.at("q"));
    Mat bi = Mat::of({{lam}}).direct_sum(e.factor.at("m"));
    return eij(2, 0, 0).kron(Mat::identity(4)).kron(aalpha).kron(Mat::identity(g)) +
           eij(2, 1, 1).kron(bi).kron(Mat::identity(4)).kron(Mat::identity(g));
  };
  return f;
}

FiniteModel finite_doubling() {
  FiniteModel f;
  f.scheme = IndexScheme({{"F", 2}});
  f.algebra = FiniteAlgebra({{"a", FactorType::C}, {"b", FactorType::C}});
  f.rep = [](const AlgebraElement& e) {
    return Mat::diag({e.factor.at("a").at(0, 0), e.factor.at("b").at(0, 0)});
  };
  f.grading = Mat::diag({Scalar(1), Scalar(-1)});
  f.j_mat = Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
  f.d_yukawa = Mat(2, 2);
  f.d_majorana = Mat(2, 2);
  return f;
}

FiniteModel finite_ed() {
  FiniteModel f;
  f.scheme = IndexScheme({{"F", 4}});
  f.algebra = FiniteAlgebra({{"a", FactorType::C}, {"b", FactorType::C}});
  f.rep = [](const AlgebraElement& e) {
    Scalar x = e.factor.at("a").at(0, 0), y = e.factor.at("b").at(0, 0);
    return Mat::diag({x, x, y, y});
  };
  f.grading = Mat::diag({Scalar(1), Scalar(-1), Scalar(-1), Scalar(1)});
  f.j_mat = Mat::of({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}).kron(Mat::identity(2));
  Scalar d = csym("ed.d");
  Mat m(4, 4);
  m.at(0, 1) = d;
  m.at(1, 0) = d.conj();
  m.at(2, 3) = d.conj();
  m.at(3, 2) = d;
  f.d_yukawa = m;
  f.d_majorana = Mat(4, 4);
  return f;
}

// ---------------------------------------------------------------------------
// two-sector (128-dimensional) constructions

namespace {

IndexScheme grand_scheme() {
  return IndexScheme({{"s", 2}, {"sd", 2}, {"C", 2}, {"I", 4}, {"alpha", 4}});
}

FiniteAlgebra grand_algebra() {
  return FiniteAlgebra({{"Q", FactorType::MnH, 4}, {"M", FactorType::MnC, 8}});
}

// Quaternionic sector on (spinor index, weak flavour) over the particle
// half, complex sector on (chirality, lepto-colour) over the antiparticle
// half.  chiral=false: the quaternionic sector reads the dotted index;
// chiral=true: it reads the chiral index.
Mat grand_rep_of(const IndexScheme& scheme, const AlgebraElement& e, bool chiral) {
  Mat rq = scheme.place({chiral ? "s" : "sd", "alpha"}, e.factor.at("Q"));
  Mat rm = scheme.place({"s", "I"}, e.factor.at("M"));
  return scheme.slot_projector("C", 0) * rq + scheme.slot_projector("C", 1) * rm;
}

Model build_grand(bool chiral) {
  FiniteModel fin = finite_sm(1);
  IndexScheme scheme = grand_scheme();
  FiniteAlgebra alg = grand_algebra();

  Model m;
  m.name = chiral ? "grand-chiral" : "grand";
  m.summary = chiral ? "Enlarged two-sector algebra with both sectors reading the chiral index"
                     : "Enlarged two-sector algebra acting on spinor indices; Dirac commutators unbounded";
  m.d_free = dirac_free().kron_right(Mat::identity(32));
  m.d_yukawa = oz(gamma5().kron(fin.d_yukawa));
  m.d_majorana = oz(gamma5().kron(fin.d_majorana));

  Triple t;
  t.n = 128;
  t.d = m.d_total();
  t.grading = gamma5().kron(fin.grading);
  t.j = AntilinearOp(charge_conjugation().mat().kron(fin.j_mat));
  t.generic_rep = [scheme, alg, chiral](const std::string& prefix) {
    return grand_rep_of(scheme, alg.generic(prefix), chiral) * germ(prefix + ".f");
  };
  m.plain = t;

  m.expected = {{"selfadjoint", true}, {"bounded", false}};
  if (!chiral) m.expected["order-zero"] = true;
  return m;
}

// Flavour action of one chirality leg: quaternions on both weak doublets.
Mat bprime_leg(const std::string& p) {
  return quaternion_of(p + ".hR").direct_sum(quaternion_of(p + ".hL"));
}

// Flavour action of one chirality leg: a complex scalar on the right doublet
// (conjugate on its second component), a quaternion on the left doublet.
Mat btilde_leg(const std::string& p) {
  Scalar cr = csym(p + ".cR");
  return Mat::diag({cr, cr.conj()}).direct_sum(quaternion_of(p + ".hL"));
}

Model build_bprime() {
  FiniteModel fin = finite_sm(1);
  IndexScheme scheme = grand_scheme();

  Triple base;
  base.n = 128;
  base.d = dirac_free().kron_right(Mat::identity(32));
  base.grading = gamma5().kron(fin.grading);
  base.j = AntilinearOp(charge_conjugation().mat().kron(fin.j_mat));

  auto pair = [scheme](const std::string& pa, const std::string& pb) {
    const std::string shared = std::min(pa, pb);
    Mat a8 = bprime_leg(pa).direct_sum(bprime_leg(pb));
    Mat m4 = generic_complex_block(shared + ".m", 4);
    Mat rep = scheme.slot_projector("C", 0) * scheme.place({"s", "alpha"}, a8) +
              scheme.slot_projector("C", 1) * scheme.place({"I"}, m4);
    return rep * germ(shared + ".f");
  };

  Model m;
  m.name = "bprime";
  m.summary = "Four-quaternion flavour algebra under the chirality-flip twist; free Dirac operator";
  m.twist = make_twisted(base, pair, gamma(0).kron(Mat::identity(32)),
                         gamma5().kron(Mat::identity(32)));
  m.d_free = base.d;
  m.d_yukawa = OperatorExpr(128);
  m.d_majorana = OperatorExpr(128);
  m.expected = {{"selfadjoint", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order", true}};
  return m;
}

Model build_btilde() {
  FiniteModel fin = finite_sm(1);
  IndexScheme scheme = grand_scheme();

  Model m;
  m.name = "btilde";
  m.summary = "Per-chirality scalar flavour subalgebra; full internal couplings under the flip twist";
  m.d_free = dirac_free().kron_right(Mat::identity(32));
  m.d_yukawa = oz(gamma5().kron(fin.d_yukawa));
  m.d_majorana = oz(gamma5().kron(fin.d_majorana));

  Triple base;
  base.n = 128;
  base.d = m.d_total();
  base.grading = gamma5().kron(fin.grading);
  base.j = AntilinearOp(charge_conjugation().mat().kron(fin.j_mat));

  auto pair = [scheme](const std::string& pa, const std::string& pb) {
    const std::string shared = std::min(pa, pb);
    Mat a8 = btilde_leg(pa).direct_sum(btilde_leg(pb));
    Mat c1 = Mat::of({{csym(shared + ".c0")}}).direct_sum(generic_complex_block(shared + ".m", 3));
    Mat rep = scheme.slot_projector("C", 0) * scheme.place({"s", "alpha"}, a8) +
              scheme.slot_projector("C", 1) * scheme.place({"I"}, c1);
    return rep * germ(shared + ".f");
  };

  m.twist = make_twisted(base, pair, gamma(0).kron(Mat::identity(32)),
                         gamma5().kron(Mat::identity(32)));
  m.expected = {{"selfadjoint", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order-free", true},
                {"twisted-first-order-yukawa", true},
                {"twisted-first-order-majorana", false},
                {"sigma-family-empty", false}};
  return m;
}

// ---------------------------------------------------------------------------
// small twisted geometries

Mat unit_col(int n, const std::vector<int>& ones) {
  Mat v(n, 1);
  for (int i : ones) v.at(i, 0) = Scalar(1);
  return v;
}

Model build_manifold_twist() {
  Model m;
  m.name = "manifold-twist";
  m.summary = "Flat spin geometry twisted by its grading";
  Triple man = manifold_triple();
  m.plain = man;
  m.twist = twist_by_grading(man, gamma(0));
  m.d_free = man.d;
  m.d_yukawa = OperatorExpr(4);
  m.d_majorana = OperatorExpr(4);
  m.hr_basis = {unit_col(4, {0, 2}), unit_col(4, {1, 3})};
  m.hplus_basis = {unit_col(4, {0}), unit_col(4, {1})};
  m.expected = {{"selfadjoint", true},
                {"bounded", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order", true}};
  return m;
}

Model build_doubled() {
  Model m;
  m.name = "doubled-manifold";
  m.summary = "Two-point extension of the flat spin geometry, twisted by the product grading";
  Triple prod = product_triple(manifold_triple(), finite_doubling().triple());
  m.plain = prod;
  m.twist = twist_by_grading(prod, gamma(0).kron(Mat::identity(2)));
  m.d_free = dirac_free().kron_right(Mat::identity(2));
  m.d_yukawa = OperatorExpr(8);
  m.d_majorana = OperatorExpr(8);
  // Fixed vectors of the twist unitary: doubled spinors over each fibre
  // point, upper components first.
  m.hr_basis = {unit_col(8, {0, 4}), unit_col(8, {2, 6}),
                unit_col(8, {1, 5}), unit_col(8, {3, 7})};
  m.hplus_basis = {unit_col(8, {0}), unit_col(8, {2}), unit_col(8, {5}), unit_col(8, {7})};
  m.expected = {{"selfadjoint", true},
                {"bounded", true},
                {"order-zero", true},
                {"first-order", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order", true}};
  return m;
}

Model build_ed() {
  Model m;
  m.name = "ed";
  m.summary = "Two-point extension with an internal mass coupling, twisted by the product grading";
  FiniteModel fin = finite_ed();
  Triple prod = product_triple(manifold_triple(), fin.triple());
  m.plain = prod;
  m.twist = twist_by_grading(prod, gamma(0).kron(Mat::identity(4)));
  m.d_free = dirac_free().kron_right(Mat::identity(4));
  m.d_yukawa = oz(gamma5().kron(fin.d_full()));
  m.d_majorana = OperatorExpr(16);
  m.hr_basis = {unit_col(16, {0, 8}),  unit_col(16, {4, 12}),
                unit_col(16, {1, 9}),  unit_col(16, {5, 13}),
                unit_col(16, {2, 10}), unit_col(16, {6, 14}),
                unit_col(16, {3, 11}), unit_col(16, {7, 15})};
  m.hplus_basis = {unit_col(16, {0}),  unit_col(16, {4}), unit_col(16, {9}),
                   unit_col(16, {13}), unit_col(16, {10}), unit_col(16, {14}),
                   unit_col(16, {3}),  unit_col(16, {7})};
  m.expected = {{"selfadjoint", true},
                {"bounded", true},
                {"order-zero", true},
                {"first-order", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order", true},
                {"yukawa-transparent", true}};
  return m;
}

Model build_sm(int generations) {
  const int g = generations;
  Model m;
  m.name = "sm";
  m.summary = "Almost-commutative electroweak-strong geometry with chirality twist";
  m.generations = g;
  FiniteModel fin = finite_sm(g);
  Triple prod = product_triple(manifold_triple(), fin.triple());
  m.plain = prod;
  m.twist = twist_by_grading(prod, gamma(0).kron(Mat::identity(32 * g)));
  m.d_free = dirac_free().kron_right(Mat::identity(32 * g));
  m.d_yukawa = oz(gamma5().kron(fin.d_yukawa));
  m.d_majorana = oz(gamma5().kron(fin.d_majorana));
  m.expected = {{"selfadjoint", true},
                {"bounded", true},
                {"order-zero", true},
                {"first-order", true},
                {"twist-ok", true},
                {"twisted-order-zero", true},
                {"twisted-bounded", true},
                {"twisted-first-order", true},
                {"majorana-transparent", true},
                {"yukawa-transparent", false},
                {"sigma-family-empty", true}};
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// catalogue

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {
      "manifold-twist", "doubled-manifold", "ed", "sm",
      "grand", "grand-chiral", "bprime", "btilde"};
  return names;
}

std::string model_summary(const std::string& name) {
  if (name == "manifold-twist") return "Flat spin geometry twisted by its grading";
  if (name == "doubled-manifold")
    return "Two-point extension of the flat spin geometry, twisted by the product grading";
  if (name == "ed")
    return "Two-point extension with an internal mass coupling, twisted by the product grading";
  if (name == "sm") return "Almost-commutative electroweak-strong geometry with chirality twist";
  if (name == "grand")
    return "Enlarged two-sector algebra acting on spinor indices; Dirac commutators unbounded";
  if (name == "grand-chiral")
    return "Enlarged two-sector algebra with both sectors reading the chiral index";
  if (name == "bprime")
    return "Four-quaternion flavour algebra under the chirality-flip twist; free Dirac operator";
  if (name == "btilde")
    return "Per-chirality scalar flavour subalgebra; full internal couplings under the flip twist";
  throw std::invalid_argument("unknown model: " + name);
}

Model build_model(const std::string& name, int generations) {
  if (name == "sm") return build_sm(generations);
  if (generations != 1)
    throw std::invalid_argument("model '" + name + "' supports a single generation only");
  if (name == "manifold-twist") return build_manifold_twist();
  if (name == "doubled-manifold") return build_doubled();
  if (name == "ed") return build_ed();
  if (name == "grand") return build_grand(false);
  if (name == "grand-chiral") return build_grand(true);
  if (name == "bprime") return build_bprime();
  if (name == "btilde") return build_btilde();
  throw std::invalid_argument("unknown model: " + name);
}

// ---------------------------------------------------------------------------
// standard checks

namespace {

bool run_check(const Model& m, const std::string& key) {
  if (key == "selfadjoint") {
    const OperatorExpr& d = m.plain ? m.plain->d : m.twist->base.d;
    return d.adjoint() == d;
  }
  if (key == "bounded")
    return germ_commutator(m.plain->d, m.plain->generic_rep("chk.bnd")).is_bounded();
  if (key == "order-zero") return check_order_zero(*m.plain);
  if (key == "first-order") return check_first_order(*m.plain);
  if (key == "twist-ok") return validate_twist(*m.twist).ok();
  if (key == "twisted-order-zero") return check_order_zero(m.twist->base);
  if (key == "twisted-bounded")
    return twisted_commutator(m.twist->base.d, m.twist->base.generic_rep("chk.tbd"), *m.twist)
        .is_bounded();
  if (key == "twisted-first-order") return check_twisted_first_order(*m.twist).satisfied();
  if (key == "twisted-first-order-free")
    return check_twisted_first_order(*m.twist, m.d_free).satisfied();
  if (key == "twisted-first-order-yukawa")
    return check_twisted_first_order(*m.twist, m.d_yukawa).satisfied();
  if (key == "twisted-first-order-majorana")
    return check_twisted_first_order(*m.twist, m.d_majorana).satisfied();
  if (key == "majorana-transparent") return check_transparency(*m.twist, m.d_majorana);
  if (key == "yukawa-transparent") return check_transparency(*m.twist, m.d_yukawa);
  if (key == "sigma-family-empty")
    return one_form_space(*m.twist, m.d_majorana, "chk.sigma").dim() == 0;
  throw std::invalid_argument("unknown check: " + key);
}

}  // namespace

std::map<std::string, bool> check_model(const Model& m) {
  std::map<std::string, bool> out;
  for (const auto& kv : m.expected) out[kv.first] = run_check(m, kv.first);
  return out;
}

// ---------------------------------------------------------------------------
// structure analysis

namespace {

// Span of the constrained family, one direction per free parameter.
SpanBasis solution_span(const Mat& rep, const SolutionSpace& sol) {
  SpanBasis span(rep.rows(), rep.cols(), true);
  for (int k = 0; k < sol.dim(); ++k) {
    std::vector<Scalar> unit(sol.dim());
    unit[k] = Scalar(1);
    span.add(rep.substitute(sol.member(unit)));
  }
  return span;
}

// Realified span of a generic representation over its complex parameters.
SpanBasis param_span(const Mat& rep, const std::vector<Symbol>& params) {
  SpanBasis span(rep.rows(), rep.cols(), true);
  for (const Symbol& p : params)
    for (const Scalar& v : {Scalar(1), Scalar::i()}) {
      std::map<SymbolId, Scalar> b;
      for (const Symbol& q : params) b[q.id] = (q.id == p.id) ? v : Scalar();
      span.add(rep.substitute(b));
    }
  return span;
}

bool spans_match(const SpanBasis& a, const SpanBasis& b) {
  if (a.rank() != b.rank()) return false;
  for (const Mat& m : b.basis())
    if (!a.contains(m)) return false;
  for (const Mat& m : a.basis())
    if (!b.contains(m)) return false;
  return true;
}

}  // namespace

BreakResult grading_break(const std::string& name) {
  bool chiral;
  if (name == "grand") chiral = false;
  else if (name == "grand-chiral") chiral = true;
  else throw std::invalid_argument("grading_break: unknown model " + name);

  IndexScheme scheme = grand_scheme();
  FiniteAlgebra alg = grand_algebra();
  FiniteModel fin = finite_sm(1);
  const std::string tag = chiral ? "gbk.c" : "gbk.g";

  AlgebraElement x = alg.generic(tag);
  Mat rx = grand_rep_of(scheme, x, chiral);
  Mat grading = gamma5().kron(fin.grading);

  EntryCollector eqs;
  eqs.add(grading * rx - rx * grading);
  if (chiral) {
    // Boundedness of the twisted commutator with the free operator under the
    // chirality flip: gamma^mu a = rho(a) gamma^mu for every mu.
    Mat r = gamma(0).kron(Mat::identity(32));
    for (int mu = 0; mu < 4; ++mu) {
      Mat gm = gamma(mu).kron(Mat::identity(32));
      eqs.add(gm * rx - r * rx * r * gm);
    }
  }
  SolutionSpace sol = solve_linear_in_symbols(eqs.eqs(), x.params, tag + ".p", SolveMode::Realified);

  BreakResult out;
  if (!sol.feasible || !sol.constraints.satisfied()) return out;
  SpanBasis got = solution_span(rx, sol);

  Mat rred;
  std::vector<Symbol> red_params;
  if (!chiral) {
    FiniteAlgebra red({{"QR", FactorType::MnH, 2},
                       {"QL", FactorType::MnH, 2},
                       {"Ml", FactorType::MnC, 4},
                       {"Mr", FactorType::MnC, 4}});
    AlgebraElement e = red.generic("gbk.gr");
    red_params = e.params;
    Mat q8 = scatter(e.factor.at("QR"), {0, 1, 4, 5}, 8) +
             scatter(e.factor.at("QL"), {2, 3, 6, 7}, 8);
    Mat m8 = e.factor.at("Ml").direct_sum(e.factor.at("Mr"));
    rred = scheme.slot_projector("C", 0) * scheme.place({"sd", "alpha"}, q8) +
           scheme.slot_projector("C", 1) * scheme.place({"s", "I"}, m8);
  } else {
    FiniteAlgebra red({{"hRl", FactorType::H},
                       {"hLl", FactorType::H},
                       {"hRr", FactorType::H},
                       {"hLr", FactorType::H},
                       {"Ml", FactorType::MnC, 4},
                       {"Mr", FactorType::MnC, 4}});
    AlgebraElement e = red.generic("gbk.cr");
    red_params = e.params;
    Mat q8 = e.factor.at("hRl")
                 .direct_sum(e.factor.at("hLl"))
                 .direct_sum(e.factor.at("hRr"))
                 .direct_sum(e.factor.at("hLr"));
    Mat m8 = e.factor.at("Ml").direct_sum(e.factor.at("Mr"));
    rred = scheme.slot_projector("C", 0) * scheme.place({"s", "alpha"}, q8) +
           scheme.slot_projector("C", 1) * scheme.place({"s", "I"}, m8);
  }
  SpanBasis want = param_span(rred, red_params);

  out.ok = spans_match(got, want);
  out.real_dim = got.rank();
  out.structure = chiral ? "H_L^l ⊕ H_L^r ⊕ H_R^l ⊕ H_R^r ⊕ M4(C)^l ⊕ M4(C)^r"
                         : "M2(H)_L ⊕ M2(H)_R ⊕ M4(C)_l ⊕ M4(C)_r";
  return out;
}

BreakResult bounded_reduction_grand() {
  IndexScheme scheme = grand_scheme();
  FiniteAlgebra alg = grand_algebra();

  AlgebraElement x = alg.generic("brd.g");
  Mat rx = grand_rep_of(scheme, x, false);
  EntryCollector eqs;
  for (int mu = 0; mu < 4; ++mu) {
    Mat gm = gamma(mu).kron(Mat::identity(32));
    eqs.add(gm * rx - rx * gm);
  }
  SolutionSpace sol = solve_linear_in_symbols(eqs.eqs(), x.params, "brd.p", SolveMode::Realified);

  BreakResult out;
  if (!sol.feasible || !sol.constraints.satisfied()) return out;
  SpanBasis got = solution_span(rx, sol);

  FiniteAlgebra red({{"q", FactorType::MnH, 2}, {"m", FactorType::MnC, 4}});
  AlgebraElement e = red.generic("brd.r");
  Mat rred = scheme.slot_projector("C", 0) * scheme.place({"alpha"}, e.factor.at("q")) +
             scheme.slot_projector("C", 1) * scheme.place({"I"}, e.factor.at("m"));
  SpanBasis want = param_span(rred, e.params);

  out.ok = spans_match(got, want);
  out.real_dim = got.rank();
  out.structure = "M2(H) ⊕ M4(C)";
  return out;
}

std::function<Mat(const std::string&)> b_subalgebra_rep() {
  IndexScheme scheme = grand_scheme();
  return [scheme](const std::string& prefix) {
    Mat a8 = btilde_leg(prefix + ".l").direct_sum(btilde_leg(prefix + ".r"));
    // the lepto-colour scalar is tied to the left-chirality scalar
    Mat c1 = Mat::of({{csym(prefix + ".l.cR")}})
                 .direct_sum(generic_complex_block(prefix + ".m", 3));
    return scheme.slot_projector("C", 0) * scheme.place({"s", "alpha"}, a8) +
           scheme.slot_projector("C", 1) * scheme.place({"I"}, c1);
  };
}

// ---------------------------------------------------------------------------
// value-level representations and field directions

Mat manifold_pair_rep(const Scalar& f, const Scalar& g) {
  return Mat::diag({f, f, g, g});
}

Mat doubled_pair_rep(const Scalar& f, const Scalar& g, const Scalar& f2, const Scalar& g2) {
  return Mat::diag({f, g2, f, g2, f2, g, f2, g});
}

Mat ed_pair_rep(const Scalar& f, const Scalar& g, const Scalar& f2, const Scalar& g2) {
  return Mat::diag({f, f2, g2, g, f, f2, g2, g, f2, f, g, g2, f2, f, g, g2});
}

FieldDirections manifold_field_directions() {
  FieldDirections d;
  for (int mu = 0; mu < 4; ++mu) d.f.push_back((gamma5() * gamma(mu)) * -Scalar::i());
  return d;
}

FieldDirections doubled_field_directions() {
  FieldDirections d;
  Mat gf = Mat::diag({Scalar(1), Scalar(-1)});
  for (int mu = 0; mu < 4; ++mu) {
    d.f.push_back(((gamma5() * gamma(mu)) * -Scalar::i()).kron(Mat::identity(2)));
    d.g.push_back(gamma(mu).kron(gf));
  }
  return d;
}

FieldDirections ed_field_directions() {
  FieldDirections d;
  Mat iprime = Mat::diag({Scalar(1), Scalar(-1), Scalar(1), Scalar(-1)});
  Mat idprime = Mat::diag({Scalar(1), Scalar(1), Scalar(-1), Scalar(-1)});
  for (int mu = 0; mu < 4; ++mu) {
    d.f.push_back(((gamma5() * gamma(mu)) * -Scalar::i()).kron(iprime));
    d.g.push_back(gamma(mu).kron(idprime));
  }
  return d;
}

}  // namespace ncg::models
