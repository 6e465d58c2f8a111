#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

#include "ncg/scalar.hpp"

namespace ncg {

// Dense matrix over Scalar.  Value type; all operations exact.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat diag(const std::vector<Scalar>& d);
  // Row-major literal, e.g. Mat::of({{a,b},{c,d}}).
  static Mat of(std::initializer_list<std::initializer_list<Scalar>> rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  Scalar& at(int i, int j) { return e_[idx(i, j)]; }
  const Scalar& at(int i, int j) const { return e_[idx(i, j)]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat& operator+=(const Mat& o) { return *this = *this + o; }
  Mat& operator-=(const Mat& o) { return *this = *this - o; }
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const Scalar& s) const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat conj() const;
  Mat adjoint() const { return conj().transpose(); }

  bool is_zero() const;
  bool is_constant() const;  // every entry a constant GaussRat
  Scalar trace() const;

  // Kronecker product, this factor outermost.
  Mat kron(const Mat& o) const;
  Mat direct_sum(const Mat& o) const;

  Mat block(int i0, int j0, int rows, int cols) const;
  void set_block(int i0, int j0, const Mat& b);

  Mat map_entries(const std::function<Scalar(const Scalar&)>& f) const;
  Mat substitute(const std::map<SymbolId, Scalar>& b) const;
  Mat derive(int mu) const;

  // Exact inverse; requires a constant (GaussRat-entry) matrix.
  Mat inverse_constant() const;
  // M * adjoint(M) == I, exactly.
  bool is_unitary() const;

 private:
  std::size_t idx(int i, int j) const;
  int r_ = 0, c_ = 0;
  std::vector<Scalar> e_;
};

inline Mat operator*(const Scalar& s, const Mat& m) { return m * s; }

// Antilinear operator psi -> M * conj(psi).  Stored with its exact inverse
// matrix so conjugation J X J^-1 = M * conj(X) * M^-1 needs no solving.
class AntilinearOp {
 public:
  AntilinearOp() = default;
  explicit AntilinearOp(Mat m);

  const Mat& mat() const { return m_; }
  const Mat& mat_inv() const { return minv_; }

  // J X J^-1 for a linear operator X.
  Mat sandwich(const Mat& x) const { return m_ * x.conj() * minv_; }
  // The linear operator J∘J (J^2 = eps I when the triple axioms hold).
  Mat square() const { return m_ * m_.conj(); }
  // Composition with a linear map: (J∘L) psi = M conj(L) conj(psi).
  AntilinearOp after_linear(const Mat& l) const { return AntilinearOp(m_ * l.conj()); }
  AntilinearOp linear_after(const Mat& l) const { return AntilinearOp(l * m_); }

 private:
  Mat m_, minv_;
};

}  // namespace ncg
