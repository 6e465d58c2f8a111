#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/linalg.hpp"
#include "ncg/scalar.hpp"

namespace ncg {

// Polynomial equations (= 0) on symbols, kept in a normalized canonical form:
//   * zero polynomials dropped,
//   * each generator scaled so its lead coefficient is 1,
//   * factors common to every monomial are stripped when they cannot vanish
//     (declared-nonvanishing symbols, and phases, which have unit modulus),
//   * duplicates removed, generators sorted.
// An empty set means "satisfied".
class ConstraintSet {
 public:
  ConstraintSet() = default;

  void add(const Scalar& p);
  void merge(const ConstraintSet& o);

  bool satisfied() const { return polys_.empty(); }
  std::size_t size() const { return polys_.size(); }
  const std::vector<Scalar>& polys() const { return polys_; }

  bool operator==(const ConstraintSet& o) const { return polys_ == o.polys_; }
  bool operator!=(const ConstraintSet& o) const { return !(*this == o); }

  // All generators vanish under the binding?
  bool vanishes_under(const std::map<SymbolId, Scalar>& b) const;

  std::vector<std::string> str_list() const;

  // Normalization applied by add(); exposed for tests and for comparing
  // externally constructed generators.
  static Scalar normalize(const Scalar& p);

  // Attempts to factor p as (linear form in xs) * (linear form in ys), the two
  // symbol groups being disjoint; used to display branch conditions.  Returns
  // the two normalized factors on success.
  static std::optional<std::pair<Scalar, Scalar>> factor_bilinear(
      const Scalar& p, const std::vector<SymbolId>& xs, const std::vector<SymbolId>& ys);

 private:
  std::vector<Scalar> polys_;
};

// Echelonized basis of the span of matrices, treating each (entry, monomial)
// pair as an independent coordinate.  With realify=true the rational and
// imaginary parts of each coordinate are separated and the span is over the
// rationals (for families with real parameters); otherwise over Q(i).
class SpanBasis {
 public:
  explicit SpanBasis(int rows, int cols, bool realify = false)
      : r_(rows), c_(cols), realify_(realify) {}

  // Adds the matrix to the span; returns true if the rank grew.
  bool add(const Mat& m);
  bool contains(const Mat& m) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  // Reduced representatives, one per pivot, reassembled as matrices.
  std::vector<Mat> basis() const;

 private:
  struct ColKey {
    int i, j, part;  // part: 0 = real component, 1 = imaginary (realified only)
    Monomial m;
    bool operator<(const ColKey& o) const {
      if (i != o.i) return i < o.i;
      if (j != o.j) return j < o.j;
      if (m != o.m) return m < o.m;
      return part < o.part;
    }
  };
  using Row = std::map<ColKey, GaussRat>;

  Row vectorize(const Mat& m) const;
  // Reduces r against the echelon rows in place.
  void reduce(Row& r) const;

  int r_, c_;
  bool realify_;
  std::vector<Row> rows_;  // echelon rows keyed by their pivot, kept reduced
};

// One affine-linear solve result.  Every unknown is expressed as
//   value(u) = offset(u) + sum_k basis[k][u] * param_k
// with exact coefficients; params are fresh registered symbols (Complex in
// complex-linear mode, Real in realified mode).  Residual equations that
// involve no unknown become constraints (or infeasibility when constant).
struct SolutionSpace {
  bool feasible = true;
  std::vector<SymbolId> unknowns;
  std::vector<Symbol> params;
  std::vector<Scalar> offsets;               // per unknown
  std::vector<std::vector<GaussRat>> basis;  // basis[k][u]
  ConstraintSet constraints;
  bool realified = false;

  int dim() const { return static_cast<int>(params.size()); }
  // unknown -> offset + sum params (params appearing symbolically)
  std::map<SymbolId, Scalar> generic_member() const;
  // unknown -> value at a parameter binding
  std::map<SymbolId, Scalar> member(const std::vector<Scalar>& param_values) const;
};

// Sparse exact linear system in indexed unknowns over Q(i), with polynomial
// inhomogeneous parts.  Gaussian elimination over the coefficient field; GMP
// keeps every rational reduced, offsets only ever scale by rationals.
class LinearSystem {
 public:
  explicit LinearSystem(int nunknowns) : n_(nunknowns) {}

  void add_row(std::map<int, GaussRat> coeffs, Scalar offset);

  // Adds Scalar equations linear in the given unknown symbols.
  // carrier_split=true: monomials may carry non-unknown symbol factors; each
  //   distinct carrier monomial yields an independent row (generic-element
  //   principle), offsets are constants.
  // carrier_split=false: unknown coefficients must be constant; unknown-free
  //   terms stay together as one polynomial offset per equation.
  void add_equation(const Scalar& eq, const std::map<SymbolId, int>& index_of,
                    bool carrier_split);

  struct Echelon {
    bool feasible = true;
    std::vector<int> pivot_of_unknown;          // row index or -1 (free)
    std::vector<std::map<int, GaussRat>> rows;  // reduced rows
    std::vector<Scalar> row_offsets;
    std::vector<Scalar> residuals;              // nonzero offsets with no unknowns
    int rank = 0;
  };
  Echelon eliminate() const;

  int unknown_count() const { return n_; }
  std::size_t row_count() const { return rows_.size(); }

 private:
  int n_;
  std::vector<std::map<int, GaussRat>> rows_;
  std::vector<Scalar> offs_;
};

enum class SolveMode { Auto, ComplexLinear, Realified };

// Solves equations (= 0) that are degree <= 1 in the unknown symbols.
// Auto picks ComplexLinear when no conjugate of an unknown occurs and all
// unknowns are Complex kind; otherwise Realified (unknown = re + i*im with
// fresh real parameters).  param_prefix names the free parameters.
SolutionSpace solve_linear_in_symbols(const std::vector<Scalar>& equations,
                                      const std::vector<Symbol>& unknowns,
                                      const std::string& param_prefix,
                                      SolveMode mode = SolveMode::Auto,
                                      bool carrier_split = true);

// Basis of {X : XM = MX for all M in mats} inside n x n matrices.
// Generators may have symbolic entries; the commutation conditions are then
// required identically in those symbols.
std::vector<Mat> commutant(const std::vector<Mat>& mats, int n);

// Echelonized basis of the Q(i)-span of the given matrices.
std::vector<Mat> span_basis(const std::vector<Mat>& mats);

}  // namespace ncg
