#include "ncg/twists.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ncg {

namespace {

// +1 if a == b, -1 if a == -b, 0 otherwise.
int sign_between(const Mat& a, const Mat& b) {
  if (a == b) return 1;
  if (a == -b) return -1;
  return 0;
}

Mat conjugate(const Mat& r, const Mat& x) { return r * x * r.adjoint(); }

}  // namespace

Mat TwistedTriple::rho(const Mat& x) const { return conjugate(r, x); }

OperatorExpr TwistedTriple::rho(const OperatorExpr& x) const {
  // R is constant, so conjugation passes through the derivatives.
  std::array<Mat, 4> c1;
  for (int mu = 0; mu < 4; ++mu) c1[mu] = conjugate(r, x.order1(mu));
  return OperatorExpr::first_order(conjugate(r, x.order0()), c1);
}

OperatorExpr twisted_commutator(const OperatorExpr& d, const Mat& a, const Mat& r) {
  const OperatorExpr az = OperatorExpr::order_zero(a);
  const OperatorExpr rz = OperatorExpr::order_zero(conjugate(r, a));
  return d * az - rz * d;
}

OperatorExpr twisted_commutator(const OperatorExpr& d, const Mat& a, const TwistedTriple& t) {
  return twisted_commutator(d, a, t.r);
}

ConstraintSet entry_constraints(const OperatorExpr& x) {
  ConstraintSet cs;
  auto absorb = [&cs](const Mat& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) cs.add(m.at(i, j));
  };
  absorb(x.order0());
  for (int mu = 0; mu < 4; ++mu) absorb(x.order1(mu));
  return cs;
}

ConstraintSet check_twisted_first_order(const TwistedTriple& t, const OperatorExpr& d_part) {
  const Mat a = t.base.generic_rep("chk.tfa");
  const Mat b = t.base.generic_rep("chk.tfb");
  const OperatorExpr da = twisted_commutator(d_part, a, t);
  const Mat b_op = t.base.j.sandwich(b.adjoint());
  const Mat b_op_twisted = t.base.j.sandwich(t.rho(b).adjoint());
  const OperatorExpr outer =
      da * OperatorExpr::order_zero(b_op) - OperatorExpr::order_zero(b_op_twisted) * da;
  return entry_constraints(outer);
}

ConstraintSet check_twisted_first_order(const TwistedTriple& t) {
  return check_twisted_first_order(t, t.base.d);
}

namespace {

void verify_twist_parts(const TwistedTriple& t) {
  if (!t.r.square() || t.r.rows() != t.base.n)
    throw std::invalid_argument("twist unitary has wrong shape");
  if (!t.r.is_constant()) throw std::invalid_argument("twist unitary is not constant");
  if (!t.r.is_unitary()) throw std::invalid_argument("twist unitary is not unitary");
  if (t.pair_rep) {
    const Mat ab = t.pair_rep("tw.chk.a", "tw.chk.b");
    const Mat ba = t.pair_rep("tw.chk.b", "tw.chk.a");
    if (t.rho(ab) != ba)
      throw std::invalid_argument("twist unitary does not implement the leg exchange");
  }
}

}  // namespace

TwistedTriple make_twisted(Triple base, std::function<Mat(const std::string&, const std::string&)> pair,
                           Mat r, Mat splitter, std::function<Mat(const std::string&)> untwisted) {
  TwistedTriple t;
  t.base = std::move(base);
  t.r = std::move(r);
  t.splitter = std::move(splitter);
  t.pair_rep = std::move(pair);
  t.untwisted_rep = std::move(untwisted);
  if (t.pair_rep)
    t.base.generic_rep = [pr = t.pair_rep](const std::string& prefix) {
      return pr(prefix + ".u", prefix + ".v");
    };
  verify_twist_parts(t);
  return t;
}

TwistedTriple minimal_twist(const Triple& t, const Mat& splitter, Mat r) {
  if (!splitter.square() || splitter.rows() != t.n)
    throw std::invalid_argument("splitter has wrong shape");
  if (!splitter.is_constant()) throw std::invalid_argument("splitter is not constant");
  if (splitter.adjoint() != splitter) throw std::invalid_argument("splitter is not selfadjoint");
  if (splitter * splitter != Mat::identity(t.n))
    throw std::invalid_argument("splitter does not square to the identity");
  const Scalar tr = splitter.trace();
  if (!tr.is_constant()) throw std::invalid_argument("splitter trace not constant");
  {
    // Both eigenspaces must be nonzero: |tr| < n.
    const GaussRat c = tr.constant();
    const GaussRat n(Rat(t.n));
    if (c == n || c == -n)
      throw std::invalid_argument("splitter has only one eigenvalue");
  }
  const Mat probe = t.generic_rep("tw.pre");
  if (splitter * probe != probe * splitter)
    throw std::invalid_argument("splitter does not commute with the representation");

  const Scalar half(Rat(1, 2));
  const Mat id = Mat::identity(t.n);
  const Mat pp = (id + splitter) * half;
  const Mat pm = (id - splitter) * half;

  Triple doubled = t;
  auto pair = [pp, pm, rep = t.generic_rep](const std::string& pa, const std::string& pb) {
    return pp * rep(pa) + pm * rep(pb);
  };
  return make_twisted(std::move(doubled), pair, std::move(r), splitter, t.generic_rep);
}

TwistedTriple twist_by_grading(const Triple& t, Mat r) {
  return minimal_twist(t, t.grading, std::move(r));
}

TwistReport validate_twist(const TwistedTriple& t) {
  TwistReport rep;
  const Mat id = Mat::identity(t.base.n);
  rep.r_unitary = t.r.is_constant() && t.r.is_unitary();
  rep.r_selfadjoint = t.r.adjoint() == t.r;
  rep.r_involutive = t.r * t.r == id;
  if (t.pair_rep) {
    const Mat ab = t.pair_rep("tw.va", "tw.vb");
    const Mat ba = t.pair_rep("tw.vb", "tw.va");
    rep.flip_implemented = t.rho(ab) == ba;
    if (t.untwisted_rep)
      rep.diagonal_limit = t.pair_rep("tw.vd", "tw.vd") == t.untwisted_rep("tw.vd");
  }
  // R (U K) vs (U K) R: compare R U with U conj(R).
  rep.r_vs_j = sign_between(t.r * t.base.j.mat(), t.base.j.mat() * t.r.conj());
  if (t.splitter.rows() > 0) {
    const OperatorExpr g = OperatorExpr::order_zero(t.splitter);
    const OperatorExpr gd = g * t.base.d;
    const OperatorExpr dg = t.base.d * g;
    if (gd == dg)
      rep.splitter_vs_d = 1;
    else if (gd == -dg)
      rep.splitter_vs_d = -1;
  }
  if (rep.r_selfadjoint && rep.r_involutive) rep.signature = r_signature(t.r);
  return rep;
}

Scalar rho_product(const TwistedTriple& t, const Mat& psi, const Mat& phi) {
  if (psi.cols() != 1 || phi.cols() != 1 || psi.rows() != t.base.n || phi.rows() != t.base.n)
    throw std::invalid_argument("rho_product expects column vectors of the triple's dimension");
  return (psi.adjoint() * t.r * phi).at(0, 0);
}

Mat rho_adjoint(const TwistedTriple& t, const Mat& o) { return t.rho(o).adjoint(); }

std::pair<int, int> r_signature(const Mat& r) {
  if (!r.square() || !r.is_constant()) throw std::invalid_argument("signature needs a constant square matrix");
  if (r.adjoint() != r || r * r != Mat::identity(r.rows()))
    throw std::invalid_argument("signature needs a selfadjoint involution");
  const GaussRat tr = r.trace().constant();
  // Eigenvalues are +-1, so tr = p - m with p + m = n.
  const GaussRat twop = tr + GaussRat(Rat(r.rows()));
  const Rat p2 = twop.re;
  Rat p = p2 / 2;
  p.canonicalize();
  if (p.get_den() != 1) throw std::invalid_argument("trace inconsistent with an involution");
  const int plus = static_cast<int>(p.get_num().get_si());
  return {plus, r.rows() - plus};
}

namespace {

// Base symbols (conjugate partners excluded) occurring in m whose registered
// name starts with prefix, in id order.
std::vector<Symbol> symbols_with_prefix(const Mat& m, const std::string& prefix) {
  std::set<SymbolId> seen;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& term : m.at(i, j).terms())
        for (const auto& factor : term.first) seen.insert(factor.first);
  std::vector<Symbol> out;
  for (SymbolId id : seen) {
    const std::string& name = Symbols::name(id);
    if (name.size() < prefix.size() || name.compare(0, prefix.size(), prefix) != 0) continue;
    if (!name.empty() && name.back() == '~') continue;
    out.push_back(Symbol{id});
  }
  return out;
}

}  // namespace

ClosureResult check_closure_under_twist(const TwistedTriple& t,
                                        const std::function<Mat(const std::string&)>& sub_rep,
                                        const std::string& tag) {
  const Mat generic = sub_rep(tag + ".s");
  const Mat image = t.rho(generic);
  const Mat candidate = sub_rep(tag + ".u");
  const std::vector<Symbol> unknowns = symbols_with_prefix(candidate, tag + ".u");

  std::vector<Scalar> eqs;
  const Mat diff = candidate - image;
  for (int i = 0; i < diff.rows(); ++i)
    for (int j = 0; j < diff.cols(); ++j)
      if (!diff.at(i, j).is_zero()) eqs.push_back(diff.at(i, j));

  ClosureResult res;
  // The image's parameters are carriers, not split points: the candidate's
  // parameters must match them linearly, so the solve keeps polynomial
  // offsets in one piece.
  res.solution = solve_linear_in_symbols(eqs, unknowns, tag + ".p", SolveMode::Auto,
                                         /*carrier_split=*/false);
  res.constraints = res.solution.constraints;
  res.closed = res.solution.feasible && res.constraints.satisfied();
  if (!res.closed) res.witness = image;
  return res;
}

}  // namespace ncg
