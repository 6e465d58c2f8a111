#include "ncg/algebra.hpp"

#include <stdexcept>

#include "ncg/linsolve.hpp"

namespace ncg {

IndexScheme::IndexScheme(std::vector<std::pair<std::string, int>> slots) {
  for (auto& [name, d] : slots) {
    if (d <= 0) throw std::invalid_argument("slot dimension must be positive");
    for (const auto& n : names_)
      if (n == name) throw std::invalid_argument("duplicate slot name: " + name);
    names_.push_back(name);
    dims_.push_back(d);
    dim_ *= d;
  }
}

std::size_t IndexScheme::pos(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  throw std::invalid_argument("unknown slot: " + name);
}

int IndexScheme::flatten(const std::vector<int>& idx) const {
  if (idx.size() != dims_.size()) throw std::invalid_argument("flatten: wrong arity");
  int f = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims_[k]) throw std::out_of_range("flatten: index");
    f = f * dims_[k] + idx[k];
  }
  return f;
}

std::vector<int> IndexScheme::unflatten(int flat) const {
  std::vector<int> idx(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    idx[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return idx;
}

Mat IndexScheme::place(const std::vector<std::string>& slots, const Mat& m) const {
  std::vector<std::size_t> sel;
  for (const auto& name : slots) {
    std::size_t p = pos(name);
    for (std::size_t q : sel)
      if (q == p) throw std::invalid_argument("place: repeated slot " + name);
    sel.push_back(p);
  }
  int sub = 1;
  for (std::size_t p : sel) sub *= dims_[p];
  if (m.rows() != sub || m.cols() != sub)
    throw std::invalid_argument("place: matrix does not match the joint slot dimension");
  Mat out(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    std::vector<int> ridx = unflatten(r);
    int rsub = 0;
    for (std::size_t p : sel) rsub = rsub * dims_[p] + ridx[p];
    for (int cs = 0; cs < sub; ++cs) {
      const Scalar& v = m.at(rsub, cs);
      if (v.is_zero()) continue;
      std::vector<int> cidx = ridx;
      int tmp = cs;
      for (std::size_t k = sel.size(); k-- > 0;) {
        cidx[sel[k]] = tmp % dims_[sel[k]];
        tmp /= dims_[sel[k]];
      }
      out.at(r, flatten(cidx)) = v;
    }
  }
  return out;
}

Mat IndexScheme::slot_projector(const std::string& slot, int value) const {
  std::size_t p = pos(slot);
  if (value < 0 || value >= dims_[p]) throw std::out_of_range("slot_projector: value");
  Mat out(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    if (unflatten(r)[p] == value) out.at(r, r) = Scalar(1);
  return out;
}

// ---------------------------------------------------------------------------

int AlgebraFactor::mat_dim() const {
  switch (type) {
    case FactorType::C: return 1;
    case FactorType::H: return 2;
    case FactorType::MnC: return n;
    case FactorType::MnH: return 2 * n;
  }
  throw std::logic_error("unreachable");
}

FiniteAlgebra::FiniteAlgebra(std::vector<AlgebraFactor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (std::size_t j = i + 1; j < factors_.size(); ++j)
      if (factors_[i].name == factors_[j].name)
        throw std::invalid_argument("duplicate factor name: " + factors_[i].name);
}

const AlgebraFactor& FiniteAlgebra::factor(const std::string& name) const {
  for (const auto& f : factors_)
    if (f.name == name) return f;
  throw std::invalid_argument("unknown factor: " + name);
}

Mat quaternion_block(Symbol alpha, Symbol beta) {
  Scalar a(alpha), b(beta);
  return Mat::of({{a, b}, {-b.conj(), a.conj()}});
}

namespace {

Symbol ensure_complex(const std::string& name, std::vector<Symbol>& params) {
  Symbol s = Symbols::ensure(name, SymbolKind::Complex);
  params.push_back(s);
  return s;
}

}  // namespace

AlgebraElement FiniteAlgebra::generic(const std::string& prefix) const {
  AlgebraElement e;
  for (const auto& f : factors_) {
    const std::string base = prefix + "." + f.name;
    switch (f.type) {
      case FactorType::C: {
        Symbol s = ensure_complex(base, e.params);
        e.factor[f.name] = Mat::of({{Scalar(s)}});
        break;
      }
      case FactorType::H: {
        Symbol a = ensure_complex(base + ".a", e.params);
        Symbol b = ensure_complex(base + ".b", e.params);
        e.factor[f.name] = quaternion_block(a, b);
        break;
      }
      case FactorType::MnC: {
        Mat m(f.n, f.n);
        for (int i = 0; i < f.n; ++i)
          for (int j = 0; j < f.n; ++j) {
            Symbol s = ensure_complex(base + "." + std::to_string(i) + std::to_string(j),
                                      e.params);
            m.at(i, j) = Scalar(s);
          }
        e.factor[f.name] = m;
        break;
      }
      case FactorType::MnH: {
        Mat m(2 * f.n, 2 * f.n);
        for (int i = 0; i < f.n; ++i)
          for (int j = 0; j < f.n; ++j) {
            const std::string cell = base + "." + std::to_string(i) + std::to_string(j);
            Symbol a = ensure_complex(cell + ".a", e.params);
            Symbol b = ensure_complex(cell + ".b", e.params);
            m.set_block(2 * i, 2 * j, quaternion_block(a, b));
          }
        e.factor[f.name] = m;
        break;
      }
    }
  }
  return e;
}

AlgebraElement FiniteAlgebra::one() const {
  AlgebraElement e;
  for (const auto& f : factors_) e.factor[f.name] = Mat::identity(f.mat_dim());
  return e;
}

AlgebraElement FiniteAlgebra::product(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement e;
  for (const auto& f : factors_) e.factor[f.name] = a.factor.at(f.name) * b.factor.at(f.name);
  return e;
}

AlgebraElement FiniteAlgebra::star(const AlgebraElement& a) const {
  AlgebraElement e;
  for (const auto& f : factors_) e.factor[f.name] = a.factor.at(f.name).adjoint();
  return e;
}

Mat FiniteAlgebra::direct_sum_rep(const AlgebraElement& a) const {
  Mat out(0, 0);
  for (const auto& f : factors_) out = out.direct_sum(a.factor.at(f.name));
  return out;
}

int FiniteAlgebra::direct_sum_dim() const {
  int d = 0;
  for (const auto& f : factors_) d += f.mat_dim();
  return d;
}

int unitary_group_dim(const FiniteAlgebra& alg, const std::string& prefix) {
  AlgebraElement g = alg.generic(prefix);
  Mat m = alg.direct_sum_rep(g);
  Mat cond = m + m.adjoint();
  std::vector<Scalar> eqs;
  for (int i = 0; i < cond.rows(); ++i)
    for (int j = 0; j < cond.cols(); ++j)
      if (!cond.at(i, j).is_zero()) eqs.push_back(cond.at(i, j));
  SolutionSpace sol =
      solve_linear_in_symbols(eqs, g.params, prefix + ".t", SolveMode::Realified);
  if (!sol.feasible || !sol.constraints.satisfied())
    throw std::logic_error("anti-hermitian condition unexpectedly inconsistent");
  return sol.dim();
}

}  // namespace ncg
