#include "ncg/linalg.hpp"

#include <stdexcept>

namespace ncg {

std::size_t Mat::idx(int i, int j) const {
  if (i < 0 || i >= r_ || j < 0 || j >= c_)
    throw std::out_of_range("Mat index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of " + std::to_string(r_) + "x" + std::to_string(c_));
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) +
         static_cast<std::size_t>(j);
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Mat Mat::diag(const std::vector<Scalar>& d) {
  Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.r_; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Mat Mat::of(std::initializer_list<std::initializer_list<Scalar>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  Mat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged matrix literal");
    int j = 0;
    for (const auto& v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat+: shape mismatch");
  Mat m(r_, c_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat-: shape mismatch");
  Mat m(r_, c_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
  return m;
}

Mat Mat::operator-() const {
  Mat m(r_, c_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("Mat*: shape mismatch");
  Mat m(r_, o.c_);
  // Sparse-aware: skip zero entries; most represented operators are block-sparse.
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b.is_zero()) continue;
        m.at(i, j) += a * b;
      }
    }
  return m;
}

Mat Mat::operator*(const Scalar& s) const {
  Mat m(r_, c_);
  if (s.is_zero()) return m;
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (!e_[k].is_zero()) m.e_[k] = e_[k] * s;
  return m;
}

Mat Mat::transpose() const {
  Mat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::conj() const {
  return map_entries([](const Scalar& s) { return s.conj(); });
}

bool Mat::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

bool Mat::is_constant() const {
  for (const auto& s : e_)
    if (!s.is_constant()) return false;
  return true;
}

Scalar Mat::trace() const {
  if (!square()) throw std::invalid_argument("trace: not square");
  Scalar t;
  for (int i = 0; i < r_; ++i) t += at(i, i);
  return t;
}

Mat Mat::kron(const Mat& o) const {
  Mat m(r_ * o.r_, c_ * o.c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      const Scalar& a = at(i, j);
      if (a.is_zero()) continue;
      for (int p = 0; p < o.r_; ++p)
        for (int q = 0; q < o.c_; ++q) {
          const Scalar& b = o.at(p, q);
          if (b.is_zero()) continue;
          m.at(i * o.r_ + p, j * o.c_ + q) = a * b;
        }
    }
  return m;
}

Mat Mat::direct_sum(const Mat& o) const {
  Mat m(r_ + o.r_, c_ + o.c_);
  m.set_block(0, 0, *this);
  m.set_block(r_, c_, o);
  return m;
}

Mat Mat::block(int i0, int j0, int rows, int cols) const {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = at(i0 + i, j0 + j);
  return m;
}

void Mat::set_block(int i0, int j0, const Mat& b) {
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

Mat Mat::map_entries(const std::function<Scalar(const Scalar&)>& f) const {
  Mat m(r_, c_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = f(e_[k]);
  return m;
}

Mat Mat::substitute(const std::map<SymbolId, Scalar>& b) const {
  auto prepared = Scalar::prepare_bindings(b);
  return map_entries([&prepared](const Scalar& s) {
    return s.size() == 0 ? s : s.substitute_prepared(prepared);
  });
}

Mat Mat::derive(int mu) const {
  return map_entries([mu](const Scalar& s) { return s.derive(mu); });
}

Mat Mat::inverse_constant() const {
  if (!square()) throw std::invalid_argument("inverse: not square");
  if (!is_constant()) throw std::invalid_argument("inverse: entries not constant");
  int n = r_;
  // Gauss-Jordan over the Gaussian rationals.
  std::vector<std::vector<GaussRat>> a(static_cast<std::size_t>(n)),
      inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    inv[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        at(i, j).is_zero() ? GaussRat() : at(i, j).constant();
    inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = GaussRat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) { piv = i; break; }
    if (piv < 0) throw std::domain_error("inverse: singular matrix");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(piv)]);
    GaussRat d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)].inv();
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] *= d;
      inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] *= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      GaussRat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
  }
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = Scalar(inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

bool Mat::is_unitary() const {
  if (!square()) return false;
  return (*this * adjoint()) == identity(r_);
}

AntilinearOp::AntilinearOp(Mat m) : m_(std::move(m)) {
  if (!m_.square()) throw std::invalid_argument("AntilinearOp: matrix not square");
  if (m_.is_constant() && m_.is_unitary()) {
    minv_ = m_.adjoint();
  } else if (m_.is_constant()) {
    minv_ = m_.inverse_constant();
  } else {
    throw std::invalid_argument("AntilinearOp: non-constant matrix");
  }
}

}  // namespace ncg
