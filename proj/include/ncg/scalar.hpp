#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncg {

using Rat = mpq_class;

// Exact Gaussian rational a + b*i.  The coefficient field for the whole engine:
// every identity is decided by exact arithmetic, never by tolerance.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(int n) : re(n), im(0) {}
  GaussRat(long n) : re(n), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }
  // |z|^2 as a rational.
  Rat norm2() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
  GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
  GaussRat operator*(const GaussRat& o) const {
    return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussRat inv() const;
  GaussRat operator/(const GaussRat& o) const { return *this * o.inv(); }

  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }
  // Deterministic total order (not a field order); for canonical containers.
  bool operator<(const GaussRat& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }

  // Canonical text: "0", "2/3", "-1", "i", "-i", "3i", "2/3i", "(1/2+3i)", "(1/2-3i)".
  std::string str() const;
};

enum class SymbolKind { Real, Complex, Phase };

using SymbolId = std::int32_t;

struct Symbol {
  SymbolId id = -1;
  bool valid() const { return id >= 0; }
  bool operator==(const Symbol& o) const { return id == o.id; }
};

// Append-only global symbol registry.
//
// Kinds:
//   Real    — fixed by conjugation.
//   Complex — registering "z" also registers the partner "z~" with conj(z) = z~.
//   Phase   — unit-modulus generator u; conj(u) = u^-1, so monomials may carry
//             negative exponents of phases and u * conj(u) = 1 holds by exponent
//             arithmetic.  A phase owns an angle symbol t with u "=" e^{i t}:
//             the derivation sends u to i * dt_mu * u.
//
// Gradient registration turns a symbol f into a function germ: four fresh
// symbols f.d0 .. f.d3 represent its partial derivatives (and the partner's
// gradients are the conjugates of those).  Symbols without gradients are
// treated as constants by the derivation.
class Symbols {
 public:
  static Symbol make(const std::string& name, SymbolKind kind);
  // Phase registration: creates phase symbol `name`, plus real angle symbol
  // `angle` with gradients (the angle is what gauge shifts are expressed in).
  static Symbol make_phase(const std::string& name, const std::string& angle);

  static bool exists(const std::string& name);
  static Symbol lookup(const std::string& name);  // throws if absent
  // Lookup-or-register; throws if the name exists with a different kind.
  static Symbol ensure(const std::string& name, SymbolKind kind);

  static const std::string& name(SymbolId id);
  static SymbolKind kind(SymbolId id);
  // Real/Phase: self.  Complex: the "~" partner.
  static SymbolId conj_partner(SymbolId id);

  // Declares the symbol (and its partner) generically nonzero; constraint
  // normalization may then strip it as a common factor.
  static void mark_nonvanishing(SymbolId id);
  static bool nonvanishing(SymbolId id);

  // Registers gradient symbols for a Real or Complex symbol (idempotent).
  static std::array<Symbol, 4> register_gradient(Symbol s);
  static std::optional<std::array<SymbolId, 4>> gradient(SymbolId id);
  // For phases: the gradient symbols of the angle.
  static std::optional<SymbolId> phase_angle(SymbolId id);

  static SymbolId count();
  // Test isolation only; invalidates every outstanding Symbol/Scalar.
  static void reset();
};

// Sorted factor list (symbol id, exponent), exponents nonzero; negative
// exponents only on Phase symbols.
using Monomial = std::vector<std::pair<SymbolId, int>>;

// Sparse multivariate polynomial over GaussRat in registered symbols.
// Canonical form: map keyed by monomial, no zero coefficients stored.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int n) { if (n != 0) t_[{}] = GaussRat(n); }
  Scalar(long n) { if (n != 0) t_[{}] = GaussRat(n); }
  Scalar(const Rat& r) { if (r != 0) t_[{}] = GaussRat(r); }
  Scalar(const GaussRat& c) { if (!c.is_zero()) t_[{}] = c; }
  Scalar(Symbol s);

  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar sym(const std::string& name) { return Scalar(Symbols::lookup(name)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  GaussRat constant() const;  // requires is_constant()

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  bool operator==(const Scalar& o) const { return t_ == o.t_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Deterministic strict order (for use as map key).
  bool operator<(const Scalar& o) const { return t_ < o.t_; }

  Scalar pow(int e) const;  // e >= 0
  Scalar conj() const;

  // Homomorphic substitution.  Complex bindings auto-extend to the conjugate
  // partner (explicit partner bindings are checked for consistency); Real
  // symbols require conjugation-fixed values; Phase symbols require constant
  // unit-modulus values.  A factor with negative exponent requires a constant
  // invertible value.
  Scalar substitute(const std::map<SymbolId, Scalar>& bindings) const;
  // Validates and conjugate-completes a binding map once; the result can be
  // fed to substitute_prepared repeatedly (e.g. entry-wise over a matrix)
  // without paying the per-call normalization.
  static std::map<SymbolId, Scalar> prepare_bindings(
      const std::map<SymbolId, Scalar>& bindings);
  Scalar substitute_prepared(const std::map<SymbolId, Scalar>& prepared) const;

  // Formal derivation d_mu: graded symbols go to their gradient symbols,
  // phases pick up i * (angle gradient), everything else is constant.
  Scalar derive(int mu) const;

  bool contains(SymbolId s) const;
  int degree_in(SymbolId s) const;
  // Splits p = coeff * s + rest with rest free of s; requires degree <= 1 in s.
  std::pair<Scalar, Scalar> split_linear(SymbolId s) const;

  const std::map<Monomial, GaussRat>& terms() const { return t_; }
  // Number of stored monomials.
  std::size_t size() const { return t_.size(); }

  // Canonical text form, e.g. "(1/2+3i)*f0*db~ + 2*x - y".  Monomials are
  // printed with factors sorted by symbol name and terms sorted by the printed
  // factor key (constant term first).
  std::string str() const;
  // Parses the same grammar (symbols must already be registered).
  static Scalar parse(const std::string& text);

 private:
  void add_term(const Monomial& m, const GaussRat& c);
  std::map<Monomial, GaussRat> t_;
};

inline Scalar operator*(const GaussRat& c, const Scalar& s) { return Scalar(c) * s; }
inline Scalar operator*(long c, const Scalar& s) { return Scalar(c) * s; }
inline Scalar operator+(long c, const Scalar& s) { return Scalar(c) + s; }
inline Scalar operator-(long c, const Scalar& s) { return Scalar(c) - s; }

}  // namespace ncg
