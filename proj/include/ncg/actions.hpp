#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncg/models.hpp"

namespace ncg::actions {

// Formal derivative marker d_mu carried inside kernel entries.  The markers
// are plain inert symbols (never differentiated, no conjugate partners); a
// kernel entry is a polynomial of degree at most one in them.
Symbol differential(int mu);

enum class Subspace {
  GradingPlus,  // +1 eigenvectors of the grading (untwisted pairing)
  TwistPlus,    // +1 eigenvectors of the twist unitary (twisted pairing)
};

// Bilinear pairing kernel K of <J xi, [R] D xi'> restricted to an explicit
// basis: K[a][b] pairs basis vector a against D applied to basis vector b,
// with derivative markers standing for the d_mu acting to the right.  The
// basis vectors are pairwise orthogonal with a common squared norm (exact
// arithmetic admits no unit normalisation; prefactors carry it instead).
struct KernelMatrix {
  Mat k;
  std::vector<Mat> basis;
  Rat norm2 = 1;

  int size() const { return k.rows(); }
};

// Transpose of a bilinear kernel as a form under the integral: the order-zero
// block is transposed, each derivative block is transposed with a sign flip
// (integration by parts).  Rejects kernels of degree > 1 in any marker.
Mat form_transpose(const Mat& k);
// (k - form_transpose(k)) / 2; the canonical representative of the pairing.
Mat antisymmetrize(const Mat& k);
bool form_antisymmetric(const Mat& k);

// Low-level pairing matrix over an arbitrary basis (columns).  `r` may be
// empty (0x0) for the plain pairing without the twist insertion.
Mat kernel_form(const AntilinearOp& j, const Mat& r, const OperatorExpr& d_op,
                const std::vector<Mat>& basis);

// Restriction pairing of a catalogue model: J and the grading come from the
// model's geometry, R from its twist (TwistPlus only).  Verifies that the
// stored basis is fixed by the selected involution, pairwise orthogonal and
// of uniform length; throws otherwise.
KernelMatrix fermionic_kernel(const models::Model& m, const OperatorExpr& d_op, Subspace s);

// Keep only the listed coordinates (basis vectors and the matching kernel
// rows/columns), in the listed order.
KernelMatrix restrict_kernel(const KernelMatrix& k, const std::vector<int>& coords);

// Plane-wave ansatz in time: replaces the d_0 marker by i*energy.  Requires
// degree <= 1 in d_0; the spatial markers are untouched.
Mat plane_wave_substitute(const Mat& k, const Scalar& energy);
KernelMatrix plane_wave_substitute(const KernelMatrix& k, const Scalar& energy);

// A fixed first-order Lagrangian pattern over named spinor slots: `kernel`
// pairs the dagger slots (rows) against the plain slots (columns).  Entries
// may carry the derivative markers, the bundled gauge symbols (spatial
// covariant derivative) and the mass symbol.  Templates are constants of the
// catalogue; matching never adjusts them.
struct LagrangianTemplate {
  std::string name;
  Mat kernel;
  std::vector<Symbol> gauge;  // bundle symbols for mu = 1..3; empty if ungauged
  std::optional<Symbol> mass;
};

// i (d_0 - sum_j sigma_j d_j) on one two-component slot.
LagrangianTemplate left_weyl_template();
// i (d_0 + sum_j sigma_j d_j); the mirror-handed variant.
LagrangianTemplate right_weyl_template();
// Two slots with opposite-handed kinetic terms coupled by a mass, the spatial
// derivatives gauge-covariant, the time derivative plain (temporal gauge).
LagrangianTemplate dirac_template();

// How template slots read off the restricted-subspace coordinates: each row
// of `col_map` (resp. `row_map`) is one plain (resp. dagger) slot as a linear
// functional of the coordinates.  `kernel_bindings` specialise the model
// kernel (e.g. a complex coupling pinned to -i*mass), `template_bindings`
// specialise the template fields (e.g. bundle symbols tied to the model's
// second one-form); `plane_wave` applies the time-derivative ansatz to both
// sides with a common energy.
struct SlotIdentification {
  Mat row_map;
  Mat col_map;
  Scalar prefactor = Scalar(1);
  std::map<SymbolId, Scalar> kernel_bindings;
  std::map<SymbolId, Scalar> template_bindings;
  std::optional<Scalar> plane_wave;
};

struct MatchResult {
  bool matched = false;
  // The slot functionals are linearly independent: the subspace carries
  // enough degrees of freedom to feed every slot its own field.
  bool independent = false;
  // When not independent and the plain slots are invertible on the
  // coordinates: the matrix X with (dagger slots) = X (plain slots) -- the
  // obstruction witness.  Empty otherwise.
  Mat dependency;
  // antisymmetrize(specialised kernel) - antisymmetrize(prefactor * pullback).
  Mat residual;
};

MatchResult match_template(const KernelMatrix& k, const LagrangianTemplate& t,
                           const SlotIdentification& id);

// Covariant operator of a product model: the model operator plus its
// selfadjoint field directions with explicit real field symbols
// prefix+".f0".."f3" and (where the family has a second form)
// prefix+".g0".."g3".  Only the models with stored field directions qualify.
struct FluctuatedOperator {
  OperatorExpr d;
  std::vector<Symbol> f, g;
};
FluctuatedOperator covariant_operator(const models::Model& m, const std::string& prefix);

// The catalogue identification for (model, template): the stated spinor slot
// readings, prefactor and specialisations.  Supported pairs:
// manifold-twist/left Weyl (obstructed), doubled-manifold/left Weyl (second
// form pinned to zero), ed/Dirac (coupling pinned to -i*mass, bundle symbols
// tied to the model's second form).  Throws for other combinations.
SlotIdentification standard_identification(const models::Model& m, const LagrangianTemplate& t,
                                           const FluctuatedOperator& op);

// (+,-) eigenvalue multiplicities of a hermitian involution.
std::pair<int, int> krein_signature(const Mat& r);

}  // namespace ncg::actions
