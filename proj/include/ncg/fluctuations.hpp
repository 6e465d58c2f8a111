#pragma once

#include <string>
#include <vector>

#include "ncg/twists.hpp"

namespace ncg {

// The generalized one-forms of a triple: finite sums a [D, b] (untwisted), or
// a [D, J b* J^-1]_rho-twisted for a twisted triple.  Generated from generic
// elements, the space is the span over function coefficients of finitely many
// constant direction matrices; basis holds those directions echelonized, and
// coeffs fresh function symbols (gradients registered), one per direction.
struct OneFormSpace {
  std::vector<Mat> basis;
  std::vector<Symbol> coeffs;

  int dim() const { return static_cast<int>(basis.size()); }
  Mat generic() const;  // sum_k coeffs[k] * basis[k]
};

OneFormSpace one_form_space(const Triple& t, const OperatorExpr& d_part,
                            const std::string& tag = "ofs");
OneFormSpace one_form_space(const TwistedTriple& t, const OperatorExpr& d_part,
                            const std::string& tag = "ofs");

// Covariant operator D + a + eps' J a J^-1.  The sign eps' is measured from
// the real structure for an untwisted triple; the twisted formula carries +1.
OperatorExpr fluctuate(const Triple& t, const Mat& a);
OperatorExpr fluctuate(const TwistedTriple& t, const Mat& a);

// Which adjoint the fluctuated operator must respect.
enum class FamilyProduct { Standard, Rho };

// All selfadjoint fluctuations of one part of the Dirac operator, presented
// with real function parameters multiplying constant directions.  Parameters
// whose direction vanishes are dropped, so dim() == 0 means the part does not
// fluctuate at all.
struct FluctuationFamily {
  OperatorExpr d;               // the part being fluctuated
  std::vector<Symbol> params;   // Real-kind function symbols, gradients registered
  std::vector<Mat> directions;  // one constant matrix per parameter

  int dim() const { return static_cast<int>(params.size()); }
  Mat potential() const;        // sum_k params[k] * directions[k]
  OperatorExpr member() const;  // d + potential()
};

FluctuationFamily selfadjoint_family(const Triple& t, const OperatorExpr& d_part,
                                     const std::string& prefix);
FluctuationFamily selfadjoint_family(const TwistedTriple& t, const OperatorExpr& d_part,
                                     const std::string& prefix,
                                     FamilyProduct product = FamilyProduct::Standard);

// Gauge-transformed potential: u [D, u*] + u a u* (untwisted), or
// rho(u) [D, u*]_rho + rho(u) a u* (twisted).  u must be exactly unitary
// (numeric, or built from phase symbols); the commutator must stay bounded.
Mat gauge_transform(const Triple& t, const Mat& a, const Mat& u);
Mat gauge_transform(const TwistedTriple& t, const Mat& a, const Mat& u);

// Conjugate action of a unitary algebra element: u J u J^-1.
Mat ad_unitary(const AntilinearOp& j, const Mat& u);

// Conjugation covariance of the fluctuation: transporting D_a with the
// (twisted) adjoint action of u equals fluctuating with the transformed
// potential.  Exact operator identity.
bool check_gauge_conjugation(const Triple& t, const Mat& a, const Mat& u);
bool check_gauge_conjugation(const TwistedTriple& t, const Mat& a, const Mat& u);

// True iff the (twisted) commutator of d_part with a generic represented
// element vanishes identically, so d_part contributes nothing to one-forms.
bool check_transparency(const Triple& t, const OperatorExpr& d_part);
bool check_transparency(const TwistedTriple& t, const OperatorExpr& d_part);

}  // namespace ncg
