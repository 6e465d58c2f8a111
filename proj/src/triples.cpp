#include "ncg/triples.hpp"

#include <stdexcept>

namespace ncg {

std::optional<int> ko_dimension(int eps, int eps_prime, int eps_dprime) {
  struct Row { int e, ep, edp, ko; };
  static const Row table[] = {
      {+1, +1, +1, 0},
      {-1, +1, -1, 2},
      {-1, +1, +1, 4},
      {+1, +1, -1, 6},
  };
  for (const Row& r : table)
    if (r.e == eps && r.ep == eps_prime && r.edp == eps_dprime) return r.ko;
  return std::nullopt;
}

bool check_order_zero(const Triple& t) {
  Mat a = t.generic_rep("chk.oza");
  Mat bo = t.j.sandwich(t.generic_rep("chk.ozb"));
  return (a * bo - bo * a).is_zero();
}

bool check_first_order(const Triple& t) {
  Mat a = t.generic_rep("chk.foa");
  OperatorExpr da = germ_commutator(t.d, a);
  OperatorExpr bo = OperatorExpr::order_zero(t.j.sandwich(t.generic_rep("chk.fob")));
  return (da * bo - bo * da).is_zero();
}

TripleReport validate_triple(const Triple& t) {
  TripleReport r;
  r.d_selfadjoint = (t.d.adjoint() == t.d);
  Mat a = t.generic_rep("chk.va");
  r.commutators_bounded = germ_commutator(t.d, a).is_bounded();

  r.grading_selfadjoint = (t.grading.adjoint() == t.grading);
  r.grading_squares = (t.grading * t.grading == Mat::identity(t.n));
  OperatorExpr g = OperatorExpr::order_zero(t.grading);
  r.grading_anticommutes_d = (g * t.d + t.d * g).is_zero();
  r.grading_commutes_rep = (t.grading * a == a * t.grading);

  r.order_zero = check_order_zero(t);
  r.first_order = check_first_order(t);

  Mat id = Mat::identity(t.n);
  Mat jsq = t.j.square();
  if (jsq == id) r.eps = 1;
  else if (jsq == -id) r.eps = -1;
  OperatorExpr dj = t.d.conj_by(t.j);
  if (dj == t.d) r.eps_prime = 1;
  else if (dj == -t.d) r.eps_prime = -1;
  Mat gj = t.j.sandwich(t.grading);
  if (gj == t.grading) r.eps_dprime = 1;
  else if (gj == -t.grading) r.eps_dprime = -1;
  r.ko_dim = ko_dimension(r.eps, r.eps_prime, r.eps_dprime);
  return r;
}

Triple manifold_triple() {
  Triple t;
  t.n = 4;
  t.generic_rep = [](const std::string& prefix) {
    Symbol f = Symbols::ensure(prefix, SymbolKind::Complex);
    Symbols::register_gradient(f);
    return Mat::identity(4) * Scalar(f);
  };
  t.d = dirac_free();
  t.grading = gamma5();
  t.j = charge_conjugation();
  return t;
}

Triple product_triple(const Triple& m, const Triple& f) {
  if (!f.d.is_bounded())
    throw std::invalid_argument("product: second factor must have a bounded operator");
  Triple t;
  t.n = m.n * f.n;
  t.generic_rep = [m = m.generic_rep, f = f.generic_rep](const std::string& prefix) {
    return m(prefix + ".m").kron(f(prefix + ".f"));
  };
  t.d = m.d.kron_right(Mat::identity(f.n)) +
        OperatorExpr::order_zero(m.grading.kron(f.d.order0()));
  t.grading = m.grading.kron(f.grading);
  t.j = AntilinearOp(m.j.mat().kron(f.j.mat()));
  return t;
}

}  // namespace ncg
