#include "ncg/clifford.hpp"

#include <stdexcept>

namespace ncg {

namespace {

const Scalar kZero(0), kOne(1), kMinusOne(-1);
const Scalar kI = Scalar::i();
const Scalar kMinusI = -Scalar::i();

Mat make_pauli(int k) {
  switch (k) {
    case 1: return Mat::of({{kZero, kOne}, {kOne, kZero}});
    case 2: return Mat::of({{kZero, kMinusI}, {kI, kZero}});
    case 3: return Mat::of({{kOne, kZero}, {kZero, kMinusOne}});
    default: throw std::out_of_range("pauli index");
  }
}

Mat make_gamma(int mu) {
  Mat g(4, 4);
  if (mu == 0) {
    g.set_block(0, 2, Mat::identity(2));
    g.set_block(2, 0, Mat::identity(2));
  } else {
    g.set_block(0, 2, pauli(mu) * kI);
    g.set_block(2, 0, pauli(mu) * kMinusI);
  }
  return g;
}

}  // namespace

const Mat& pauli(int k) {
  static const Mat p1 = make_pauli(1), p2 = make_pauli(2), p3 = make_pauli(3);
  switch (k) {
    case 1: return p1;
    case 2: return p2;
    case 3: return p3;
    default: throw std::out_of_range("pauli index");
  }
}

const Mat& gamma(int mu) {
  static const std::array<Mat, 4> g = {make_gamma(0), make_gamma(1), make_gamma(2),
                                       make_gamma(3)};
  if (mu < 0 || mu > 3) throw std::out_of_range("gamma index");
  return g[static_cast<std::size_t>(mu)];
}

const Mat& gamma5() {
  static const Mat g5 = gamma(0) * gamma(1) * gamma(2) * gamma(3);
  return g5;
}

AntilinearOp charge_conjugation() {
  static const Mat u = gamma(0) * gamma(2) * kI;
  return AntilinearOp(u);
}

// ---------------------------------------------------------------------------
// OperatorExpr

OperatorExpr::OperatorExpr(int n) : c0_(n, n) {
  for (auto& c : c1_) c = Mat(n, n);
}

OperatorExpr OperatorExpr::order_zero(Mat m) {
  OperatorExpr x(m.rows());
  if (!m.square()) throw std::invalid_argument("operator fibre not square");
  x.c0_ = std::move(m);
  return x;
}

OperatorExpr OperatorExpr::first_order(Mat c0, std::array<Mat, 4> c1) {
  OperatorExpr x = order_zero(std::move(c0));
  for (int mu = 0; mu < 4; ++mu) {
    if (c1[static_cast<std::size_t>(mu)].rows() != x.dim() ||
        !c1[static_cast<std::size_t>(mu)].square())
      throw std::invalid_argument("operator coefficient shape mismatch");
  }
  x.c1_ = std::move(c1);
  return x;
}

const Mat& OperatorExpr::order1(int mu) const {
  if (mu < 0 || mu > 3) throw std::out_of_range("derivative index");
  return c1_[static_cast<std::size_t>(mu)];
}

bool OperatorExpr::is_zero() const { return c0_.is_zero() && is_bounded(); }

bool OperatorExpr::is_bounded() const {
  for (const auto& c : c1_)
    if (!c.is_zero()) return false;
  return true;
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
  OperatorExpr x;
  x.c0_ = c0_ + o.c0_;
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c1_[mu] + o.c1_[mu];
  return x;
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const {
  OperatorExpr x;
  x.c0_ = c0_ - o.c0_;
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c1_[mu] - o.c1_[mu];
  return x;
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr x;
  x.c0_ = -c0_;
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = -c1_[mu];
  return x;
}

OperatorExpr OperatorExpr::operator*(const OperatorExpr& o) const {
  if (degree() + o.degree() > 1)
    throw std::logic_error("operator composition would exceed first order");
  OperatorExpr x;
  // (L0 + L1 d)(R0 + R1 d) with L1 R1 = 0: the derivative acts on R0 by Leibniz.
  x.c0_ = c0_ * o.c0_;
  for (std::size_t mu = 0; mu < 4; ++mu)
    x.c0_ += c1_[mu] * o.c0_.derive(static_cast<int>(mu));
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c0_ * o.c1_[mu] + c1_[mu] * o.c0_;
  return x;
}

OperatorExpr OperatorExpr::operator*(const Scalar& s) const {
  OperatorExpr x;
  x.c0_ = c0_ * s;
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c1_[mu] * s;
  return x;
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr x;
  x.c0_ = c0_.adjoint();
  for (std::size_t mu = 0; mu < 4; ++mu) {
    Mat cd = c1_[mu].adjoint();
    x.c0_ = x.c0_ - cd.derive(static_cast<int>(mu));
    x.c1_[mu] = -cd;
  }
  return x;
}

OperatorExpr OperatorExpr::conj_by(const AntilinearOp& j) const {
  OperatorExpr x;
  x.c0_ = j.sandwich(c0_);
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = j.sandwich(c1_[mu]);
  return x;
}

OperatorExpr OperatorExpr::kron_right(const Mat& f) const {
  OperatorExpr x;
  x.c0_ = c0_.kron(f);
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c1_[mu].kron(f);
  return x;
}

OperatorExpr OperatorExpr::substitute(const std::map<SymbolId, Scalar>& b) const {
  OperatorExpr x;
  x.c0_ = c0_.substitute(b);
  for (std::size_t mu = 0; mu < 4; ++mu) x.c1_[mu] = c1_[mu].substitute(b);
  return x;
}

OperatorExpr dirac_free() {
  std::array<Mat, 4> c1;
  for (int mu = 0; mu < 4; ++mu) c1[static_cast<std::size_t>(mu)] = gamma(mu) * kMinusI;
  return OperatorExpr::first_order(Mat(4, 4), c1);
}

OperatorExpr germ_commutator(const OperatorExpr& d, const Mat& a) {
  OperatorExpr az = OperatorExpr::order_zero(a);
  return d * az - az * d;
}

// ---------------------------------------------------------------------------
// gamma intertwiner

Intertwiner solve_intertwiner_constraint() {
  std::vector<Symbol> unknowns;
  Mat a(4, 4), b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Symbol s = Symbols::ensure("itw.a." + std::to_string(i) + std::to_string(j),
                                 SymbolKind::Complex);
      unknowns.push_back(s);
      a.at(i, j) = Scalar(s);
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Symbol s = Symbols::ensure("itw.b." + std::to_string(i) + std::to_string(j),
                                 SymbolKind::Complex);
      unknowns.push_back(s);
      b.at(i, j) = Scalar(s);
    }
  std::vector<Scalar> eqs;
  for (int mu = 0; mu < 4; ++mu) {
    Mat lhs = gamma(mu) * a - b * gamma(mu);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!lhs.at(i, j).is_zero()) eqs.push_back(lhs.at(i, j));
  }
  Intertwiner out;
  out.space = solve_linear_in_symbols(eqs, unknowns, "itw.l");
  auto g = out.space.generic_member();
  out.a = a.substitute(g);
  out.b = b.substitute(g);
  return out;
}

}  // namespace ncg
