#include "ncg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ncg {

GaussRat GaussRat::inv() const {
  if (is_zero()) throw std::domain_error("GaussRat: division by zero");
  Rat n = norm2();
  return GaussRat(re / n, -im / n);
}

namespace {

std::string rat_str(const Rat& r) {
  mpq_class c(r);
  c.canonicalize();
  return c.get_str();
}

}  // namespace

std::string GaussRat::str() const {
  if (is_zero()) return "0";
  if (im == 0) return rat_str(re);
  std::string imag;
  if (im == 1) imag = "i";
  else if (im == -1) imag = "-i";
  else imag = rat_str(im) + "i";
  if (re == 0) return imag;
  std::string s = "(" + rat_str(re);
  if (im > 0) s += "+" + imag;
  else s += "-" + (im == -1 ? std::string("i") : rat_str(-im) + "i");
  return s + ")";
}

// ---------------------------------------------------------------------------
// Symbol registry

namespace {

struct SymbolEntry {
  std::string name;
  SymbolKind kind = SymbolKind::Real;
  SymbolId conj = -1;           // partner (self for Real/Phase)
  bool nonvanishing = false;
  bool has_grad = false;
  std::array<SymbolId, 4> grad{{-1, -1, -1, -1}};
  SymbolId angle = -1;          // Phase only: real angle symbol
};

// deque: appends never invalidate references handed out by name()/entry().
struct Registry {
  std::deque<SymbolEntry> entries;
  std::unordered_map<std::string, SymbolId> by_name;
  std::mutex mu;
};

Registry& reg() {
  static Registry* r = new Registry;
  return *r;
}

SymbolId add_entry_locked(const std::string& name, SymbolKind kind) {
  Registry& r = reg();
  if (r.by_name.count(name)) throw std::invalid_argument("symbol name already registered: " + name);
  if (name.empty() || name == "i") throw std::invalid_argument("reserved symbol name: '" + name + "'");
  SymbolEntry e;
  e.name = name;
  e.kind = kind;
  SymbolId id = static_cast<SymbolId>(r.entries.size());
  e.conj = id;
  r.entries.push_back(std::move(e));
  r.by_name.emplace(name, id);
  return id;
}

SymbolEntry& entry(SymbolId id) {
  Registry& r = reg();
  if (id < 0 || id >= static_cast<SymbolId>(r.entries.size()))
    throw std::out_of_range("unknown symbol id");
  return r.entries[static_cast<std::size_t>(id)];
}

}  // namespace

Symbol Symbols::make(const std::string& name, SymbolKind kind) {
  if (kind == SymbolKind::Phase)
    throw std::invalid_argument("use make_phase for phase symbols");
  std::lock_guard<std::mutex> lock(reg().mu);
  SymbolId id = add_entry_locked(name, kind);
  if (kind == SymbolKind::Complex) {
    SymbolId cid = add_entry_locked(name + "~", SymbolKind::Complex);
    entry(id).conj = cid;
    entry(cid).conj = id;
  }
  return Symbol{id};
}

Symbol Symbols::make_phase(const std::string& name, const std::string& angle) {
  std::lock_guard<std::mutex> lock(reg().mu);
  SymbolId id = add_entry_locked(name, SymbolKind::Phase);
  SymbolId aid = add_entry_locked(angle, SymbolKind::Real);
  entry(id).angle = aid;
  // Angle gradients are what gauge transformations shift by.
  SymbolEntry& ae = entry(aid);
  ae.has_grad = true;
  for (int mu = 0; mu < 4; ++mu)
    ae.grad[static_cast<std::size_t>(mu)] =
        add_entry_locked(angle + ".d" + std::to_string(mu), SymbolKind::Real);
  return Symbol{id};
}

bool Symbols::exists(const std::string& name) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return reg().by_name.count(name) > 0;
}

Symbol Symbols::lookup(const std::string& name) {
  std::lock_guard<std::mutex> lock(reg().mu);
  auto it = reg().by_name.find(name);
  if (it == reg().by_name.end()) throw std::invalid_argument("unknown symbol: " + name);
  return Symbol{it->second};
}

Symbol Symbols::ensure(const std::string& name, SymbolKind kind) {
  {
    std::lock_guard<std::mutex> lock(reg().mu);
    auto it = reg().by_name.find(name);
    if (it != reg().by_name.end()) {
      if (entry(it->second).kind != kind)
        throw std::invalid_argument("symbol " + name + " exists with a different kind");
      return Symbol{it->second};
    }
  }
  return make(name, kind);
}

const std::string& Symbols::name(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return entry(id).name;
}

SymbolKind Symbols::kind(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return entry(id).kind;
}

SymbolId Symbols::conj_partner(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return entry(id).conj;
}

void Symbols::mark_nonvanishing(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  entry(id).nonvanishing = true;
  entry(entry(id).conj).nonvanishing = true;
}

bool Symbols::nonvanishing(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return entry(id).nonvanishing;
}

std::array<Symbol, 4> Symbols::register_gradient(Symbol s) {
  std::lock_guard<std::mutex> lock(reg().mu);
  SymbolEntry& e = entry(s.id);
  if (e.kind == SymbolKind::Phase)
    throw std::invalid_argument("phase symbols differentiate through their angle");
  if (!e.has_grad) {
    std::array<SymbolId, 4> g{}, gc{};
    for (int mu = 0; mu < 4; ++mu) {
      g[static_cast<std::size_t>(mu)] =
          add_entry_locked(e.name + ".d" + std::to_string(mu),
                           e.kind == SymbolKind::Real ? SymbolKind::Real : SymbolKind::Complex);
    }
    if (e.kind == SymbolKind::Complex) {
      // The partner's gradients are the conjugates of the gradients.
      const std::string pname = entry(e.conj).name;
      for (int mu = 0; mu < 4; ++mu)
        gc[static_cast<std::size_t>(mu)] =
            add_entry_locked(pname + ".d" + std::to_string(mu), SymbolKind::Complex);
      for (int mu = 0; mu < 4; ++mu) {
        auto m = static_cast<std::size_t>(mu);
        entry(g[m]).conj = gc[m];
        entry(gc[m]).conj = g[m];
      }
      SymbolEntry& pe = entry(e.conj);
      pe.has_grad = true;
      pe.grad = gc;
    }
    e.has_grad = true;
    e.grad = g;
  }
  const auto& gr = entry(s.id).grad;
  return {Symbol{gr[0]}, Symbol{gr[1]}, Symbol{gr[2]}, Symbol{gr[3]}};
}

std::optional<std::array<SymbolId, 4>> Symbols::gradient(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  const SymbolEntry& e = entry(id);
  if (!e.has_grad) return std::nullopt;
  return e.grad;
}

std::optional<SymbolId> Symbols::phase_angle(SymbolId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  const SymbolEntry& e = entry(id);
  if (e.kind != SymbolKind::Phase) return std::nullopt;
  return e.angle;
}

SymbolId Symbols::count() {
  std::lock_guard<std::mutex> lock(reg().mu);
  return static_cast<SymbolId>(reg().entries.size());
}

void Symbols::reset() {
  std::lock_guard<std::mutex> lock(reg().mu);
  reg().entries.clear();
  reg().by_name.clear();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(Symbol s) {
  if (!s.valid()) throw std::invalid_argument("invalid symbol");
  t_[Monomial{{s.id, 1}}] = GaussRat(1);
}

GaussRat Scalar::constant() const {
  if (t_.empty()) return GaussRat();
  if (!is_constant()) throw std::logic_error("Scalar is not constant: " + str());
  return t_.begin()->second;
}

void Scalar::add_term(const Monomial& m, const GaussRat& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, -c);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

namespace {

// Merge sorted factor lists, adding exponents; drops zero exponents (phases
// meeting their inverses cancel here).
Monomial mul_monomials(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) r.push_back(a[i++]);
    else if (b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      int e = a[i].second + b[j].second;
      if (e != 0) r.emplace_back(a[i].first, e);
      ++i; ++j;
    }
  }
  while (i < a.size()) r.push_back(a[i++]);
  while (j < b.size()) r.push_back(b[j++]);
  return r;
}

}  // namespace

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  if (t_.empty() || o.t_.empty()) return r;
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : o.t_)
      r.add_term(mul_monomials(ma, mb), ca * cb);
  return r;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Scalar::pow: negative exponent");
  Scalar r(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::conj() const {
  Scalar r;
  for (const auto& [m, c] : t_) {
    Monomial cm;
    cm.reserve(m.size());
    for (const auto& [s, e] : m) {
      if (Symbols::kind(s) == SymbolKind::Phase) cm.emplace_back(s, -e);
      else cm.emplace_back(Symbols::conj_partner(s), e);
    }
    std::sort(cm.begin(), cm.end());
    r.add_term(cm, c.conj());
  }
  return r;
}

std::map<SymbolId, Scalar> Scalar::prepare_bindings(
    const std::map<SymbolId, Scalar>& bindings) {
  // Normalize: auto-complete conjugate partners, validate kinds.
  std::map<SymbolId, Scalar> b = bindings;
  for (const auto& [s, v] : bindings) {
    switch (Symbols::kind(s)) {
      case SymbolKind::Real:
        if (v.conj() != v)
          throw std::invalid_argument("real symbol " + Symbols::name(s) +
                                      " bound to non-real value " + v.str());
        break;
      case SymbolKind::Phase: {
        if (!v.is_constant())
          throw std::invalid_argument("phase symbol " + Symbols::name(s) +
                                      " must be bound to a constant");
        GaussRat c = v.constant();
        if (c.norm2() != 1)
          throw std::invalid_argument("phase symbol " + Symbols::name(s) +
                                      " bound off the unit circle: " + v.str());
        break;
      }
      case SymbolKind::Complex: {
        SymbolId p = Symbols::conj_partner(s);
        auto it = b.find(p);
        if (it == b.end()) b.emplace(p, v.conj());
        else if (it->second != v.conj())
          throw std::invalid_argument("inconsistent conjugate bindings for " + Symbols::name(s));
        break;
      }
    }
  }
  return b;
}

Scalar Scalar::substitute(const std::map<SymbolId, Scalar>& bindings) const {
  return substitute_prepared(prepare_bindings(bindings));
}

Scalar Scalar::substitute_prepared(const std::map<SymbolId, Scalar>& b) const {
  Scalar out;
  for (const auto& [m, c] : t_) {
    Scalar term(c);
    Monomial untouched;
    for (const auto& [s, e] : m) {
      auto it = b.find(s);
      if (it == b.end()) {
        untouched.emplace_back(s, e);
        continue;
      }
      const Scalar& v = it->second;
      if (e >= 0) {
        term = term * v.pow(e);
      } else {
        if (!v.is_constant())
          throw std::invalid_argument("negative power of " + Symbols::name(s) +
                                      " needs a constant value");
        GaussRat cv = v.constant();
        term = term * Scalar(cv.inv()).pow(-e);
      }
    }
    if (!untouched.empty()) {
      Scalar mono;
      mono.t_.emplace(untouched, GaussRat(1));
      term = term * mono;
    }
    out += term;
  }
  return out;
}

Scalar Scalar::derive(int mu) const {
  if (mu < 0 || mu > 3) throw std::out_of_range("derive: direction out of range");
  auto m_ = static_cast<std::size_t>(mu);
  Scalar out;
  for (const auto& [m, c] : t_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      const auto [s, e] = m[k];
      if (Symbols::kind(s) == SymbolKind::Phase) {
        // d(u^e) = e * i * (angle gradient) * u^e
        SymbolId angle = *Symbols::phase_angle(s);
        auto g = Symbols::gradient(angle);
        Monomial term = m;
        Scalar mono;
        mono.t_.emplace(term, GaussRat(1));
        out += Scalar(GaussRat(Rat(e), Rat(0)) * GaussRat::i() * c) * mono *
               Scalar(Symbol{(*g)[m_]});
        continue;
      }
      auto g = Symbols::gradient(s);
      if (!g) continue;  // constants
      Monomial term;
      term.reserve(m.size() + 1);
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j == k) {
          if (m[j].second > 1) term.emplace_back(m[j].first, m[j].second - 1);
        } else {
          term.push_back(m[j]);
        }
      }
      term.emplace_back((*g)[m_], 1);
      std::sort(term.begin(), term.end());
      Scalar mono;
      mono.t_.emplace(term, GaussRat(1));
      out += Scalar(GaussRat(Rat(e)) * c) * mono;
    }
  }
  return out;
}

bool Scalar::contains(SymbolId s) const {
  for (const auto& [m, c] : t_) {
    (void)c;
    for (const auto& [id, e] : m) {
      (void)e;
      if (id == s) return true;
    }
  }
  return false;
}

int Scalar::degree_in(SymbolId s) const {
  int d = 0;
  for (const auto& [m, c] : t_) {
    (void)c;
    for (const auto& [id, e] : m)
      if (id == s) d = std::max(d, e);
  }
  return d;
}

std::pair<Scalar, Scalar> Scalar::split_linear(SymbolId s) const {
  Scalar coeff, rest;
  for (const auto& [m, c] : t_) {
    int e = 0;
    Monomial without;
    for (const auto& [id, ex] : m) {
      if (id == s) e = ex;
      else without.emplace_back(id, ex);
    }
    if (e == 0) {
      rest.add_term(m, c);
    } else if (e == 1) {
      coeff.add_term(without, c);
    } else {
      throw std::invalid_argument("split_linear: degree > 1 in " + Symbols::name(s));
    }
  }
  return {coeff, rest};
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string monomial_key(const Monomial& m) {
  std::vector<std::pair<std::string, int>> named;
  named.reserve(m.size());
  for (const auto& [s, e] : m) named.emplace_back(Symbols::name(s), e);
  std::sort(named.begin(), named.end());
  std::string key;
  for (const auto& [n, e] : named) {
    if (!key.empty()) key += "*";
    key += n;
    if (e != 1) key += "^" + std::to_string(e);
  }
  return key;
}

// True when the printed form starts with '-' (used to join terms with " - ").
bool print_negative(const GaussRat& c) {
  if (c.re != 0) return c.re < 0;
  return c.im < 0;
}

}  // namespace

std::string Scalar::str() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<std::string, const GaussRat*>> items;
  items.reserve(t_.size());
  for (const auto& [m, c] : t_) items.emplace_back(monomial_key(m), &c);
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  bool first = true;
  for (const auto& [key, cp] : items) {
    GaussRat c = *cp;
    bool neg = false;
    if (print_negative(c) && c.is_real()) {
      // pure real/imaginary negatives print via " - "; mixed complex keep sign inside parens
      neg = true;
      c = -c;
    } else if (c.re == 0 && c.im < 0) {
      neg = true;
      c = -c;
    }
    std::string body;
    if (key.empty()) {
      body = c.str();
    } else if (c.is_one()) {
      body = key;
    } else {
      body = c.str() + "*" + key;
    }
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " + body : " + " + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing (the grammar printed by str(); also general +,-,*,^,() arithmetic)

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos) + ": " + msg +
                                " in \"" + s + "\"");
  }

  Scalar parse_expr() {
    Scalar v = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+')) v += parse_term();
      else if (eat('-')) v -= parse_term();
      else return v;
    }
  }

  Scalar parse_term() {
    Scalar v = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*')) v = v * parse_factor();
      else return v;
    }
  }

  Scalar parse_factor() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '-') { ++pos; return -parse_factor(); }
    if (c == '+') { ++pos; return parse_factor(); }
    if (c == '(') {
      ++pos;
      Scalar v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_pow(v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return maybe_pow(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return maybe_pow(parse_ident());
    fail("unexpected character");
  }

  Scalar maybe_pow(Scalar base) {
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip_ws();
      bool neg = false;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        neg = s[pos] == '-';
        ++pos;
      }
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected integer exponent");
      int e = std::stoi(s.substr(start, pos - start));
      if (neg) {
        // Negative powers exist only for single phase symbols, where the
        // inverse is the conjugate.
        if (base.size() != 1) fail("negative exponent on non-monomial");
        const auto& [m, coeff] = *base.terms().begin();
        if (!coeff.is_one() || m.size() != 1 || m[0].second != 1 ||
            Symbols::kind(m[0].first) != SymbolKind::Phase)
          fail("negative exponent only on phase symbols");
        return base.conj().pow(e);
      }
      return base.pow(e);
    }
    return base;
  }

  Scalar parse_number() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string num = s.substr(start, pos - start);
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      std::size_t ds = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (ds == pos) fail("expected denominator");
      den = s.substr(ds, pos - ds);
    }
    Rat r(num + "/" + den);
    r.canonicalize();
    // trailing 'i' makes it imaginary: "3i", "2/3i"
    if (pos < s.size() && s[pos] == 'i' && !ident_continues(pos + 1)) {
      ++pos;
      return Scalar(GaussRat(Rat(0), r));
    }
    return Scalar(GaussRat(r));
  }

  bool ident_continues(std::size_t p) const {
    if (p >= s.size()) return false;
    char c = s[p];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '~' ||
           c == '\'';
  }

  Scalar parse_ident() {
    std::size_t start = pos;
    ++pos;
    while (ident_continues(pos)) ++pos;
    std::string name = s.substr(start, pos - start);
    if (name == "i") return Scalar::i();
    return Scalar::sym(name);
  }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Parser p(text);
  Scalar v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace ncg
