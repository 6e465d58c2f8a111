#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/fluctuations.hpp"

namespace ncg::models {

// A finite-dimensional fibre geometry: algebra, represented on a fixed index
// scheme, with internal grading, real structure (j_mat followed by complex
// conjugation) and internal operator split into a Yukawa-type and a
// Majorana-type part.
struct FiniteModel {
  FiniteAlgebra algebra;
  IndexScheme scheme{{}};
  std::function<Mat(const AlgebraElement&)> rep;
  Mat grading;
  Mat j_mat;
  Mat d_yukawa;    // internal mass couplings preserved by the real structure
  Mat d_majorana;  // self-conjugate coupling (one entry per generation pair)

  int dim() const { return scheme.dim(); }
  Mat d_full() const { return d_yukawa + d_majorana; }
  // The fibre as a spectral triple with bounded operator d_full().
  Triple triple() const;
};

// One-generation fibre of the electroweak-and-strong geometry on C^32 with
// index slots (conjugation, lepto-colour, weak flavour, generation); three
// generations enlarge the flavour entries to generic 3x3 blocks.
FiniteModel finite_sm(int generations = 1);
// Two-point fibre (C + C, C^2, 0).
FiniteModel finite_doubling();
// Two-point fibre with an off-diagonal mass coupling (C + C, C^4, D_f).
FiniteModel finite_ed();

// A catalogue entry.  Untwisted geometries carry `plain`; twisted ones carry
// `twist` (and `plain` too when the untwisted product is itself meaningful).
// The operator parts always refer to the full geometry's operator:
//   d = d_free + d_yukawa + d_majorana.
struct Model {
  std::string name;
  std::string summary;
  int generations = 1;
  std::optional<Triple> plain;
  std::optional<TwistedTriple> twist;
  OperatorExpr d_free, d_yukawa, d_majorana;
  // Ordered explicit bases: fixed vectors of the twist unitary (Rv = v) and
  // of the grading (Gv = v), in the fibre-major order the action kernels use.
  std::vector<Mat> hr_basis, hplus_basis;
  // Expected verdicts of the named standard checks (see check_model).
  std::map<std::string, bool> expected;

  OperatorExpr d_total() const { return d_free + d_yukawa + d_majorana; }
};

// Registered model names, in catalogue order.
const std::vector<std::string>& model_names();
// One-line description without building anything; throws on unknown names.
std::string model_summary(const std::string& name);
// Builds a catalogue model.  Deterministic: repeated calls reuse the same
// registered symbols and return equal data.
Model build_model(const std::string& name, int generations = 1);

// Runs the standard named checks for the model (the keys of `expected`);
// returns actual verdicts.
std::map<std::string, bool> check_model(const Model& m);

// --- structure analysis -----------------------------------------------------

// Result of restricting a represented algebra by commutation conditions and
// certifying the outcome against an independently built reduced
// representation.  `structure` joins the reduced factors' display names; it is
// only trustworthy when ok is true (solution span == reduced span, exactly).
struct BreakResult {
  bool ok = false;
  int real_dim = 0;
  std::string structure;
};

// Grading-commutant break of the two-sector algebras ("grand",
// "grand-chiral").  The chiral variant also imposes boundedness of the
// twisted commutator with the free operator, which is what confines each
// summand to a definite chirality.
BreakResult grading_break(const std::string& name);

// Constrains the generic represented element of the (dotted) two-sector
// algebra to have bounded commutator with the free operator and certifies
// that the constrained family is exactly the spinor-scalar one.
BreakResult bounded_reduction_grand();

// Representation of the subalgebra whose twist-closure fails: the scalar
// acting on the lepto-colour singlet is tied to the left-chirality scalar of
// the flavour sector.  Feed to check_closure_under_twist on `btilde`.
std::function<Mat(const std::string&)> b_subalgebra_rep();

// --- value-level representations and field directions -----------------------

// Twisted pair representations at explicit values (legs in grading order:
// the first pair of arguments acts on the +1 eigenspace).
Mat manifold_pair_rep(const Scalar& f, const Scalar& g);
Mat doubled_pair_rep(const Scalar& f, const Scalar& g, const Scalar& f2, const Scalar& g2);
Mat ed_pair_rep(const Scalar& f, const Scalar& g, const Scalar& f2, const Scalar& g2);

// Selfadjoint field directions of the twisted-fluctuation families, split
// into the vector-field part (one direction per mu, coefficient real) and the
// second one-form part where present.
struct FieldDirections {
  std::vector<Mat> f;  // -i gamma5 gamma^mu (x internal), mu = 0..3
  std::vector<Mat> g;  // gamma^mu (x internal), mu = 0..3; empty for the manifold
};
FieldDirections manifold_field_directions();
FieldDirections doubled_field_directions();
FieldDirections ed_field_directions();

}  // namespace ncg::models
