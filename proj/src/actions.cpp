#include "ncg/actions.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "ncg/clifford.hpp"
#include "ncg/linsolve.hpp"

namespace ncg::actions {

namespace {

const Scalar kHalf(GaussRat(Rat(1) / Rat(2), Rat(0)));

Mat identity_like(int n) { return Mat::identity(n); }

// Splits a kernel into its order-zero block and the four marker blocks;
// rejects entries that are not affine of degree <= 1 in the markers.
struct SplitKernel {
  Mat k0;
  std::array<Mat, 4> kd;
};

SplitKernel split_kernel(const Mat& k) {
  SplitKernel s{Mat(k.rows(), k.cols()), {}};
  for (auto& m : s.kd) m = Mat(k.rows(), k.cols());
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) {
      Scalar rest = k.at(i, j);
      for (int mu = 0; mu < 4; ++mu) {
        auto [c, r] = rest.split_linear(differential(mu).id);
        s.kd[static_cast<std::size_t>(mu)].at(i, j) = c;
        rest = r;
      }
      s.k0.at(i, j) = rest;
    }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j)
          if (s.kd[static_cast<std::size_t>(mu)].at(i, j).contains(differential(nu).id))
            throw std::invalid_argument("kernel entry of degree > 1 in the derivative markers");
  return s;
}

int column_rank(const Mat& m) {
  SpanBasis sb(m.rows(), 1, /*realify=*/false);
  for (int c = 0; c < m.cols(); ++c) sb.add(m.block(0, c, m.rows(), 1));
  return sb.rank();
}

}  // namespace

Symbol differential(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("derivative marker index");
  static const std::array<Symbol, 4> syms = {
      Symbols::ensure("del0", SymbolKind::Real), Symbols::ensure("del1", SymbolKind::Real),
      Symbols::ensure("del2", SymbolKind::Real), Symbols::ensure("del3", SymbolKind::Real)};
  return syms[static_cast<std::size_t>(mu)];
}

Mat form_transpose(const Mat& k) {
  if (k.rows() != k.cols()) throw std::invalid_argument("kernel not square");
  SplitKernel s = split_kernel(k);
  Mat out = s.k0.transpose();
  for (int mu = 0; mu < 4; ++mu)
    out = out - s.kd[static_cast<std::size_t>(mu)].transpose() * Scalar(differential(mu));
  return out;
}

Mat antisymmetrize(const Mat& k) { return (k - form_transpose(k)) * kHalf; }

bool form_antisymmetric(const Mat& k) { return (form_transpose(k) + k).is_zero(); }

Mat kernel_form(const AntilinearOp& j, const Mat& r, const OperatorExpr& d_op,
                const std::vector<Mat>& basis) {
  if (basis.empty()) throw std::invalid_argument("empty restriction basis");
  const int n = d_op.dim();
  const int m = static_cast<int>(basis.size());
  Mat b(n, m);
  for (int a = 0; a < m; ++a) {
    if (basis[static_cast<std::size_t>(a)].rows() != n ||
        basis[static_cast<std::size_t>(a)].cols() != 1)
      throw std::invalid_argument("basis vector shape mismatch");
    b.set_block(0, a, basis[static_cast<std::size_t>(a)]);
  }
  Mat dm = d_op.order0();
  for (int mu = 0; mu < 4; ++mu) dm += d_op.order1(mu) * Scalar(differential(mu));
  Mat pairing = j.mat().adjoint();
  if (r.rows() > 0) pairing = pairing * r;
  return b.transpose() * pairing * dm * b;
}

KernelMatrix fermionic_kernel(const models::Model& m, const OperatorExpr& d_op, Subspace s) {
  const bool twisted = (s == Subspace::TwistPlus);
  if (twisted && !m.twist)
    throw std::invalid_argument("model " + m.name + " carries no twist unitary");
  const Triple& geom = twisted ? m.twist->base : (m.plain ? *m.plain : m.twist->base);
  const std::vector<Mat>& basis = twisted ? m.hr_basis : m.hplus_basis;
  if (basis.empty())
    throw std::invalid_argument("model " + m.name + " stores no basis for this subspace");
  const Mat& fixing = twisted ? m.twist->r : geom.grading;
  Rat norm2 = 0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (!(fixing * basis[a] - basis[a]).is_zero())
      throw std::invalid_argument("basis vector not fixed by the selected involution");
    for (std::size_t c = a + 1; c < basis.size(); ++c)
      if (!(basis[a].adjoint() * basis[c]).is_zero())
        throw std::invalid_argument("restriction basis not orthogonal");
    Scalar len = (basis[a].adjoint() * basis[a]).at(0, 0);
    Rat l2 = len.constant().re;
    if (a == 0)
      norm2 = l2;
    else if (l2 != norm2)
      throw std::invalid_argument("restriction basis has mixed lengths");
  }
  KernelMatrix out;
  out.k = kernel_form(geom.j, twisted ? m.twist->r : Mat(), d_op, basis);
  out.basis = basis;
  out.norm2 = norm2;
  return out;
}

KernelMatrix restrict_kernel(const KernelMatrix& k, const std::vector<int>& coords) {
  KernelMatrix out;
  const int m = static_cast<int>(coords.size());
  out.k = Mat(m, m);
  for (int i = 0; i < m; ++i) {
    int ci = coords[static_cast<std::size_t>(i)];
    if (ci < 0 || ci >= k.size()) throw std::out_of_range("kernel coordinate");
    out.basis.push_back(k.basis[static_cast<std::size_t>(ci)]);
    for (int j = 0; j < m; ++j)
      out.k.at(i, j) = k.k.at(ci, coords[static_cast<std::size_t>(j)]);
  }
  out.norm2 = k.norm2;
  return out;
}

Mat plane_wave_substitute(const Mat& k, const Scalar& energy) {
  const SymbolId d0 = differential(0).id;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      if (k.at(i, j).degree_in(d0) > 1)
        throw std::invalid_argument("kernel of degree > 1 in the time marker");
  const std::map<SymbolId, Scalar> b = {{d0, Scalar::i() * energy}};
  // Formal operator substitution, not a value binding: bypass kind checks.
  return k.map_entries([&b](const Scalar& e) { return e.substitute_prepared(b); });
}

KernelMatrix plane_wave_substitute(const KernelMatrix& k, const Scalar& energy) {
  KernelMatrix out = k;
  out.k = plane_wave_substitute(k.k, energy);
  return out;
}

LagrangianTemplate left_weyl_template() {
  Mat k = identity_like(2) * Scalar(differential(0));
  for (int j = 1; j <= 3; ++j) k = k - pauli(j) * Scalar(differential(j));
  return {"left-weyl", k * Scalar::i(), {}, std::nullopt};
}

LagrangianTemplate right_weyl_template() {
  Mat k = identity_like(2) * Scalar(differential(0));
  for (int j = 1; j <= 3; ++j) k = k + pauli(j) * Scalar(differential(j));
  return {"right-weyl", k * Scalar::i(), {}, std::nullopt};
}

LagrangianTemplate dirac_template() {
  LagrangianTemplate t;
  t.name = "dirac";
  for (int j = 1; j <= 3; ++j)
    t.gauge.push_back(Symbols::ensure("act.gauge" + std::to_string(j), SymbolKind::Real));
  t.mass = Symbols::ensure("act.mass", SymbolKind::Real);
  Mat left = identity_like(2) * Scalar(differential(0));
  Mat right = left;
  for (int j = 1; j <= 3; ++j) {
    Scalar cov = Scalar(differential(j)) -
                 Scalar::i() * Scalar(t.gauge[static_cast<std::size_t>(j - 1)]);
    left = left - pauli(j) * cov;
    right = right + pauli(j) * cov;
  }
  t.kernel = Mat(4, 4);
  t.kernel.set_block(0, 0, left * Scalar::i());
  t.kernel.set_block(2, 2, right * Scalar::i());
  Mat m2 = identity_like(2) * (-Scalar(*t.mass));
  t.kernel.set_block(0, 2, m2);
  t.kernel.set_block(2, 0, m2);
  return t;
}

MatchResult match_template(const KernelMatrix& k, const LagrangianTemplate& t,
                           const SlotIdentification& id) {
  const int n = k.size();
  if (id.col_map.cols() != n || id.row_map.cols() != n)
    throw std::invalid_argument("identification shape does not fit the kernel");
  if (t.kernel.rows() != id.row_map.rows() || t.kernel.cols() != id.col_map.rows())
    throw std::invalid_argument("identification shape does not fit the template");

  Mat km = id.kernel_bindings.empty() ? k.k : k.k.substitute(id.kernel_bindings);
  Mat tm = id.template_bindings.empty() ? t.kernel : t.kernel.substitute(id.template_bindings);
  if (id.plane_wave) {
    km = plane_wave_substitute(km, *id.plane_wave);
    tm = plane_wave_substitute(tm, *id.plane_wave);
  }

  MatchResult out;
  Mat stacked(id.col_map.rows() + id.row_map.rows(), n);
  stacked.set_block(0, 0, id.col_map);
  stacked.set_block(id.col_map.rows(), 0, id.row_map);
  out.independent = column_rank(stacked.transpose()) == stacked.rows();
  if (!out.independent && id.col_map.rows() == id.col_map.cols()) {
    try {
      Mat x = id.row_map * id.col_map.inverse_constant();
      if ((x * id.col_map - id.row_map).is_zero()) out.dependency = x;
    } catch (const std::exception&) {
      // leave the witness empty when the plain slots are singular
    }
  }

  Mat pullback = id.row_map.transpose() * tm * id.col_map * id.prefactor;
  out.residual = antisymmetrize(km) - antisymmetrize(pullback);
  out.matched = out.independent && out.residual.is_zero();
  return out;
}

FluctuatedOperator covariant_operator(const models::Model& m, const std::string& prefix) {
  models::FieldDirections dirs;
  if (m.name == "manifold-twist")
    dirs = models::manifold_field_directions();
  else if (m.name == "doubled-manifold")
    dirs = models::doubled_field_directions();
  else if (m.name == "ed")
    dirs = models::ed_field_directions();
  else
    throw std::invalid_argument("model " + m.name + " has no stored field directions");

  FluctuatedOperator out{m.d_total(), {}, {}};
  Mat pot(dirs.f[0].rows(), dirs.f[0].cols());
  for (int mu = 0; mu < 4; ++mu) {
    Symbol s = Symbols::ensure(prefix + ".f" + std::to_string(mu), SymbolKind::Real);
    out.f.push_back(s);
    pot += dirs.f[static_cast<std::size_t>(mu)] * Scalar(s);
  }
  if (!dirs.g.empty())
    for (int mu = 0; mu < 4; ++mu) {
      Symbol s = Symbols::ensure(prefix + ".g" + std::to_string(mu), SymbolKind::Real);
      out.g.push_back(s);
      pot += dirs.g[static_cast<std::size_t>(mu)] * Scalar(s);
    }
  out.d = out.d + OperatorExpr::order_zero(pot);
  return out;
}

SlotIdentification standard_identification(const models::Model& m, const LagrangianTemplate& t,
                                           const FluctuatedOperator& op) {
  const Mat is2 = pauli(2) * Scalar::i();
  SlotIdentification id;
  id.plane_wave = Scalar(op.f[0]);
  if (m.name == "manifold-twist" && t.name == "left-weyl") {
    id.col_map = identity_like(2);
    id.row_map = is2;
    id.prefactor = Scalar(2);
    return id;
  }
  if (m.name == "doubled-manifold" && t.name == "left-weyl") {
    id.col_map = Mat(2, 4);
    id.col_map.set_block(0, 0, identity_like(2));
    id.row_map = Mat(2, 4);
    id.row_map.set_block(0, 2, is2);
    id.prefactor = Scalar(4);
    for (const Symbol& g : op.g) id.kernel_bindings.emplace(g.id, Scalar(0));
    return id;
  }
  if (m.name == "ed" && t.name == "dirac") {
    id.col_map = Mat(4, 8);
    id.col_map.set_block(0, 0, identity_like(4));
    id.row_map = Mat(4, 8);
    id.row_map.set_block(0, 4, is2);
    id.row_map.set_block(2, 6, -is2);
    id.prefactor = Scalar(4);
    id.kernel_bindings.emplace(Symbols::lookup("ed.d").id, -Scalar::i() * Scalar(*t.mass));
    for (int j = 1; j <= 3; ++j)
      id.template_bindings.emplace(t.gauge[static_cast<std::size_t>(j - 1)].id,
                                   -Scalar(op.g[static_cast<std::size_t>(j)]));
    return id;
  }
  throw std::invalid_argument("no stated identification for model " + m.name + " and template " +
                              t.name);
}

std::pair<int, int> krein_signature(const Mat& r) {
  if (r.rows() != r.cols()) throw std::invalid_argument("involution not square");
  if (!(r.adjoint() - r).is_zero()) throw std::invalid_argument("involution not hermitian");
  const Mat eye = identity_like(r.rows());
  if (!(r * r - eye).is_zero()) throw std::invalid_argument("matrix does not square to one");
  int plus = column_rank(r + eye);
  int minus = column_rank(eye - r);
  return {plus, minus};
}

}  // namespace ncg::actions
