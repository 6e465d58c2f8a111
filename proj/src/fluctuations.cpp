#include "ncg/fluctuations.hpp"

#include <map>
#include <stdexcept>

namespace ncg {

namespace {

// Constant coefficient matrix of each monomial occurring in m.
std::map<Monomial, Mat> monomial_directions(const Mat& m) {
  std::map<Monomial, Mat> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& term : m.at(i, j).terms()) {
        auto it = out.find(term.first);
        if (it == out.end()) it = out.emplace(term.first, Mat(m.rows(), m.cols())).first;
        it->second.at(i, j) = Scalar(term.second);
      }
  return out;
}

int measure_eps_prime(const OperatorExpr& d, const AntilinearOp& j) {
  const OperatorExpr dj = d.conj_by(j);
  if (dj == d) return 1;
  if (dj == -d) return -1;
  throw std::invalid_argument("real structure neither commutes nor anticommutes with D");
}

OneFormSpace space_from(const OperatorExpr& prod, const std::string& tag) {
  if (!prod.is_bounded())
    throw std::invalid_argument("one-forms do not close: a commutator stays unbounded");
  std::vector<Mat> dirs;
  for (const auto& entry : monomial_directions(prod.order0())) dirs.push_back(entry.second);
  OneFormSpace s;
  s.basis = span_basis(dirs);
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    Symbol c = Symbols::ensure(tag + ".c" + std::to_string(k), SymbolKind::Complex);
    Symbols::register_gradient(c);
    s.coeffs.push_back(c);
  }
  return s;
}

}  // namespace

Mat OneFormSpace::generic() const {
  if (basis.empty()) return Mat();
  Mat a(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < basis.size(); ++k) a += basis[k] * Scalar(coeffs[k]);
  return a;
}

OneFormSpace one_form_space(const Triple& t, const OperatorExpr& d_part, const std::string& tag) {
  const Mat a = t.generic_rep(tag + ".a");
  const Mat b = t.generic_rep(tag + ".b");
  const OperatorExpr prod = OperatorExpr::order_zero(a) * germ_commutator(d_part, b);
  return space_from(prod, tag);
}

OneFormSpace one_form_space(const TwistedTriple& t, const OperatorExpr& d_part,
                            const std::string& tag) {
  const Mat a = t.base.generic_rep(tag + ".a");
  const Mat b = t.base.generic_rep(tag + ".b");
  const Mat b_op = t.base.j.sandwich(b.adjoint());
  const Mat b_op_twisted = t.base.j.sandwich(t.rho(b).adjoint());
  const OperatorExpr comm =
      d_part * OperatorExpr::order_zero(b_op) - OperatorExpr::order_zero(b_op_twisted) * d_part;
  return space_from(OperatorExpr::order_zero(a) * comm, tag);
}

namespace {

OperatorExpr fluctuate_with(const OperatorExpr& d, const AntilinearOp& j, int eps_prime,
                            const Mat& a) {
  if (a.rows() != a.cols() || a.rows() != d.dim())
    throw std::invalid_argument("potential has the wrong shape");
  const Mat sym = j.sandwich(a);
  const Mat f = (eps_prime == 1) ? a + sym : a - sym;
  return d + OperatorExpr::order_zero(f);
}

}  // namespace

OperatorExpr fluctuate(const Triple& t, const Mat& a) {
  return fluctuate_with(t.d, t.j, measure_eps_prime(t.d, t.j), a);
}

OperatorExpr fluctuate(const TwistedTriple& t, const Mat& a) {
  return fluctuate_with(t.base.d, t.base.j, 1, a);
}

Mat FluctuationFamily::potential() const {
  if (params.empty()) return Mat(d.dim(), d.dim());
  Mat f(directions[0].rows(), directions[0].cols());
  for (std::size_t k = 0; k < params.size(); ++k) f += directions[k] * Scalar(params[k]);
  return f;
}

OperatorExpr FluctuationFamily::member() const {
  return d + OperatorExpr::order_zero(potential());
}

namespace {

FluctuationFamily family_from(const OperatorExpr& d_part, const AntilinearOp& j, int eps_prime,
                              const OneFormSpace& ofs, const std::string& prefix,
                              const std::function<Mat(const Mat&)>& adjoint_of) {
  FluctuationFamily fam;
  fam.d = d_part;
  if (ofs.dim() == 0) return fam;

  const Mat a = ofs.generic();
  const Mat sym = j.sandwich(a);
  const Mat f = (eps_prime == 1) ? a + sym : a - sym;

  std::vector<Scalar> eqs;
  const Mat diff = f - adjoint_of(f);
  for (int i = 0; i < diff.rows(); ++i)
    for (int jj = 0; jj < diff.cols(); ++jj)
      if (!diff.at(i, jj).is_zero()) eqs.push_back(diff.at(i, jj));

  SolutionSpace sol = solve_linear_in_symbols(eqs, ofs.coeffs, prefix + ".t");
  if (!sol.feasible || !sol.constraints.satisfied())
    throw std::logic_error("adjointness conditions failed to reduce linearly");

  const Mat fsol = f.substitute(sol.generic_member());
  std::map<SymbolId, Mat> per_param;
  for (const auto& entry : monomial_directions(fsol)) {
    if (entry.first.size() != 1 || entry.first[0].second != 1)
      throw std::logic_error("fluctuation family is not linear in its parameters");
    per_param.emplace(entry.first[0].first, entry.second);
  }

  // The family is the real span of the per-parameter directions; the raw
  // directions may be linearly dependent, so echelonize first.  Every basis
  // element is a real combination of family members, hence itself in the
  // family (and selfadjoint).
  SpanBasis span(f.rows(), f.cols(), /*realify=*/true);
  for (const Symbol& p : sol.params) {
    auto it = per_param.find(p.id);
    if (it != per_param.end() && !it->second.is_zero()) span.add(it->second);
  }

  int k = 0;
  for (const Mat& dir : span.basis()) {
    Symbol fp = Symbols::ensure(prefix + ".p" + std::to_string(k), SymbolKind::Real);
    Symbols::register_gradient(fp);
    fam.params.push_back(fp);
    fam.directions.push_back(dir);
    ++k;
  }
  return fam;
}

}  // namespace

FluctuationFamily selfadjoint_family(const Triple& t, const OperatorExpr& d_part,
                                     const std::string& prefix) {
  const OneFormSpace ofs = one_form_space(t, d_part, prefix + ".c");
  return family_from(d_part, t.j, measure_eps_prime(t.d, t.j), ofs, prefix,
                     [](const Mat& f) { return f.adjoint(); });
}

FluctuationFamily selfadjoint_family(const TwistedTriple& t, const OperatorExpr& d_part,
                                     const std::string& prefix, FamilyProduct product) {
  const OneFormSpace ofs = one_form_space(t, d_part, prefix + ".c");
  std::function<Mat(const Mat&)> adj;
  if (product == FamilyProduct::Standard)
    adj = [](const Mat& f) { return f.adjoint(); };
  else
    adj = [&t](const Mat& f) { return rho_adjoint(t, f); };
  return family_from(d_part, t.base.j, 1, ofs, prefix, adj);
}

namespace {

void require_unitary(const Mat& u, int n) {
  if (!u.square() || u.rows() != n) throw std::invalid_argument("gauge element has wrong shape");
  const Mat id = Mat::identity(n);
  if (u * u.adjoint() != id || u.adjoint() * u != id)
    throw std::invalid_argument("gauge element is not unitary");
}

}  // namespace

Mat gauge_transform(const Triple& t, const Mat& a, const Mat& u) {
  require_unitary(u, t.n);
  const Mat us = u.adjoint();
  const OperatorExpr lead =
      OperatorExpr::order_zero(u) * (t.d * OperatorExpr::order_zero(us) -
                                     OperatorExpr::order_zero(us) * t.d);
  if (!lead.is_bounded()) throw std::invalid_argument("gauge commutator is unbounded");
  return lead.order0() + u * a * us;
}

Mat gauge_transform(const TwistedTriple& t, const Mat& a, const Mat& u) {
  require_unitary(u, t.base.n);
  const Mat us = u.adjoint();
  const Mat ru = t.rho(u);
  const OperatorExpr lead =
      OperatorExpr::order_zero(ru) * twisted_commutator(t.base.d, us, t);
  if (!lead.is_bounded()) throw std::invalid_argument("gauge commutator is unbounded");
  return lead.order0() + ru * a * us;
}

Mat ad_unitary(const AntilinearOp& j, const Mat& u) { return u * j.sandwich(u); }

bool check_gauge_conjugation(const Triple& t, const Mat& a, const Mat& u) {
  const Mat adu = ad_unitary(t.j, u);
  const Mat adinv = ad_unitary(t.j, u.adjoint());
  const OperatorExpr lhs = OperatorExpr::order_zero(adu) * fluctuate(t, a) *
                           OperatorExpr::order_zero(adinv);
  return lhs == fluctuate(t, gauge_transform(t, a, u));
}

bool check_gauge_conjugation(const TwistedTriple& t, const Mat& a, const Mat& u) {
  const Mat adu = ad_unitary(t.base.j, t.rho(u));
  const Mat adinv = ad_unitary(t.base.j, u.adjoint());
  const OperatorExpr lhs = OperatorExpr::order_zero(adu) * fluctuate(t, a) *
                           OperatorExpr::order_zero(adinv);
  return lhs == fluctuate(t, gauge_transform(t, a, u));
}

bool check_transparency(const Triple& t, const OperatorExpr& d_part) {
  return germ_commutator(d_part, t.generic_rep("trp")).is_zero();
}

bool check_transparency(const TwistedTriple& t, const OperatorExpr& d_part) {
  return twisted_commutator(d_part, t.base.generic_rep("trp"), t).is_zero();
}

}  // namespace ncg
