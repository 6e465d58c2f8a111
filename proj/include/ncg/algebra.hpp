#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncg/linalg.hpp"
#include "ncg/scalar.hpp"

namespace ncg {

// Named tensor-factor bookkeeping for a finite-dimensional fibre.  Slots are
// declared outermost first; a flat index runs over the slots in declaration
// order (row-major).  Operators that act on a subset of slots are placed with
// identity on the rest, which keeps every construction in one fixed basis.
class IndexScheme {
 public:
  explicit IndexScheme(std::vector<std::pair<std::string, int>> slots);

  int dim() const { return dim_; }
  int slot_count() const { return static_cast<int>(dims_.size()); }
  int slot_dim(const std::string& name) const { return dims_[pos(name)]; }

  int flatten(const std::vector<int>& idx) const;
  std::vector<int> unflatten(int flat) const;

  // Operator acting on the listed slots (joint index row-major in the listed
  // order, which need not be the declaration order) and as identity elsewhere.
  Mat place(const std::vector<std::string>& slots, const Mat& m) const;
  // Diagonal projector onto slot == value.
  Mat slot_projector(const std::string& slot, int value) const;

 private:
  std::size_t pos(const std::string& name) const;
  std::vector<std::string> names_;
  std::vector<int> dims_;
  int dim_ = 1;
};

// Finite *-algebra given as a direct sum of standard factors.  Quaternions are
// carried in the standard complex embedding
//   q = [[a, b], [-conj b, conj a]],
// which is closed under products and adjoints; M_n(H) uses 2x2 such blocks.
enum class FactorType { C, H, MnC, MnH };

struct AlgebraFactor {
  std::string name;
  FactorType type = FactorType::C;
  int n = 1;  // matrix size for MnC / MnH
  // dimension of the canonical complex matrix form
  int mat_dim() const;
};

// One element: a canonical complex matrix per factor.  Generic elements carry
// the symbols that parametrize them.
struct AlgebraElement {
  std::map<std::string, Mat> factor;
  std::vector<Symbol> params;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  explicit FiniteAlgebra(std::vector<AlgebraFactor> factors);

  const std::vector<AlgebraFactor>& factors() const { return factors_; }
  const AlgebraFactor& factor(const std::string& name) const;

  // Generic element with entry symbols "<prefix>.<factor>...."; deterministic,
  // so repeated calls with one prefix reuse the same symbols.
  AlgebraElement generic(const std::string& prefix) const;
  AlgebraElement one() const;
  AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement star(const AlgebraElement& a) const;

  // Canonical faithful representation: block diagonal over the factors in
  // declaration order.
  Mat direct_sum_rep(const AlgebraElement& a) const;
  int direct_sum_dim() const;

 private:
  std::vector<AlgebraFactor> factors_;
};

// Standard generic quaternion in the complex embedding.
Mat quaternion_block(Symbol alpha, Symbol beta);

// Real dimension of the Lie algebra { a : a* + a = 0 } of the unitary group,
// computed by an exact realified solve on a generic element:
//   C -> 1,  H -> 3,  M_n(C) -> n^2,  M_n(H) -> n(2n+1).
int unitary_group_dim(const FiniteAlgebra& alg, const std::string& prefix = "ugd");

}  // namespace ncg
