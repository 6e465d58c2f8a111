#include "ncg/linsolve.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ncg {

// ---------------------------------------------------------------------------
// ConstraintSet

Scalar ConstraintSet::normalize(const Scalar& p) {
  if (p.is_zero()) return p;
  // Strip factors that cannot vanish: phases (units, any common power including
  // negative) and declared-nonvanishing symbols (common positive power).
  std::map<SymbolId, int> minexp;
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    for (const auto& [s, e] : m) minexp.emplace(s, e);
  }
  for (auto& [s, mn] : minexp) {
    for (const auto& [m, c] : p.terms()) {
      (void)c;
      int e = 0;
      for (const auto& [ms, me] : m)
        if (ms == s) { e = me; break; }
      mn = std::min(mn, e);
    }
  }
  std::map<SymbolId, int> strip;
  for (const auto& [s, mn] : minexp) {
    if (Symbols::kind(s) == SymbolKind::Phase) {
      if (mn != 0) strip[s] = mn;
    } else if (Symbols::nonvanishing(s) && mn >= 1) {
      strip[s] = mn;
    }
  }
  Scalar stripped;
  for (const auto& [m, c] : p.terms()) {
    Scalar mono{c};
    for (const auto& [s, e] : m) {
      auto it = strip.find(s);
      int ne = it == strip.end() ? e : e - it->second;
      if (ne > 0) mono = mono * Scalar(Symbol{s}).pow(ne);
      else if (ne < 0) mono = mono * Scalar(Symbol{s}).conj().pow(-ne);  // phase inverse
    }
    stripped += mono;
  }
  // Scale so the first stored term has coefficient 1.
  GaussRat lead = stripped.terms().begin()->second;
  return Scalar(lead.inv()) * stripped;
}

void ConstraintSet::add(const Scalar& p) {
  Scalar n = normalize(p);
  if (n.is_zero()) return;
  auto it = std::lower_bound(polys_.begin(), polys_.end(), n);
  if (it != polys_.end() && *it == n) return;
  polys_.insert(it, n);
}

void ConstraintSet::merge(const ConstraintSet& o) {
  for (const auto& p : o.polys_) add(p);
}

bool ConstraintSet::vanishes_under(const std::map<SymbolId, Scalar>& b) const {
  for (const auto& p : polys_)
    if (!p.substitute(b).is_zero()) return false;
  return true;
}

std::vector<std::string> ConstraintSet::str_list() const {
  std::vector<std::string> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p.str());
  return out;
}

std::optional<std::pair<Scalar, Scalar>> ConstraintSet::factor_bilinear(
    const Scalar& p, const std::vector<SymbolId>& xs, const std::vector<SymbolId>& ys) {
  if (p.is_zero()) return std::nullopt;
  auto xindex = [&xs](SymbolId s) -> int {
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (xs[k] == s) return static_cast<int>(k) + 1;
    return -1;
  };
  auto yindex = [&ys](SymbolId s) -> int {
    for (std::size_t k = 0; k < ys.size(); ++k)
      if (ys[k] == s) return static_cast<int>(k) + 1;
    return -1;
  };
  // M[a][b]: coefficient of x_a * y_b, slot 0 meaning "1".
  std::vector<std::vector<GaussRat>> M(xs.size() + 1, std::vector<GaussRat>(ys.size() + 1));
  for (const auto& [m, c] : p.terms()) {
    int xi = 0, yi = 0;
    for (const auto& [s, e] : m) {
      int a = xindex(s), b = yindex(s);
      if (a > 0) {
        if (e != 1 || xi != 0) return std::nullopt;
        xi = a;
      } else if (b > 0) {
        if (e != 1 || yi != 0) return std::nullopt;
        yi = b;
      } else {
        return std::nullopt;  // foreign symbol
      }
    }
    M[static_cast<std::size_t>(xi)][static_cast<std::size_t>(yi)] = c;
  }
  // rank-1 test
  std::size_t r0 = 0, c0 = 0;
  bool found = false;
  for (std::size_t a = 0; a < M.size() && !found; ++a)
    for (std::size_t b = 0; b < M[a].size() && !found; ++b)
      if (!M[a][b].is_zero()) { r0 = a; c0 = b; found = true; }
  if (!found) return std::nullopt;
  GaussRat piv = M[r0][c0];
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = 0; b < M[a].size(); ++b)
      if (M[a][b] * piv != M[a][c0] * M[r0][b]) return std::nullopt;
  Scalar f1, f2;
  for (std::size_t a = 0; a < M.size(); ++a) {
    Scalar basis = a == 0 ? Scalar(1) : Scalar(Symbol{xs[a - 1]});
    f1 += Scalar(M[a][c0]) * basis;
  }
  for (std::size_t b = 0; b < M[r0].size(); ++b) {
    Scalar basis = b == 0 ? Scalar(1) : Scalar(Symbol{ys[b - 1]});
    f2 += Scalar(M[r0][b] / piv) * basis;
  }
  return std::make_pair(ConstraintSet::normalize(f1), ConstraintSet::normalize(f2));
}

// ---------------------------------------------------------------------------
// SpanBasis

SpanBasis::Row SpanBasis::vectorize(const Mat& m) const {
  if (m.rows() != r_ || m.cols() != c_) throw std::invalid_argument("span: shape mismatch");
  Row row;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      for (const auto& [mono, c] : m.at(i, j).terms()) {
        if (realify_) {
          if (c.re != 0) row[ColKey{i, j, 0, mono}] = GaussRat(c.re);
          if (c.im != 0) row[ColKey{i, j, 1, mono}] = GaussRat(c.im);
        } else {
          row[ColKey{i, j, 0, mono}] = c;
        }
      }
  return row;
}

void SpanBasis::reduce(Row& r) const {
  while (!r.empty()) {
    const ColKey& pivot = r.begin()->first;
    const Row* match = nullptr;
    for (const auto& er : rows_)
      if (er.begin()->first.i == pivot.i && er.begin()->first.j == pivot.j &&
          er.begin()->first.part == pivot.part && er.begin()->first.m == pivot.m) {
        match = &er;
        break;
      }
    if (!match) return;
    GaussRat f = r.begin()->second;  // echelon rows are pivot-normalized
    for (const auto& [k, v] : *match) {
      auto it = r.find(k);
      if (it == r.end()) {
        r.emplace(k, -(f * v));
      } else {
        it->second -= f * v;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }
}

bool SpanBasis::add(const Mat& m) {
  Row row = vectorize(m);
  reduce(row);
  if (row.empty()) return false;
  GaussRat inv = row.begin()->second.inv();
  for (auto& [k, v] : row) v *= inv;
  // Back-eliminate the new pivot from the stored rows to keep them reduced.
  const ColKey pivot = row.begin()->first;
  for (auto& er : rows_) {
    auto it = er.find(pivot);
    if (it == er.end()) continue;
    GaussRat f = it->second;
    for (const auto& [k, v] : row) {
      auto jt = er.find(k);
      if (jt == er.end()) {
        er.emplace(k, -(f * v));
      } else {
        jt->second -= f * v;
        if (jt->second.is_zero()) er.erase(jt);
      }
    }
  }
  rows_.push_back(std::move(row));
  return true;
}

bool SpanBasis::contains(const Mat& m) const {
  Row row = vectorize(m);
  reduce(row);
  return row.empty();
}

std::vector<Mat> SpanBasis::basis() const {
  std::vector<const Row*> sorted;
  sorted.reserve(rows_.size());
  for (const auto& r : rows_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const Row* a, const Row* b) { return a->begin()->first < b->begin()->first; });
  std::vector<Mat> out;
  out.reserve(sorted.size());
  for (const Row* r : sorted) {
    Mat m(r_, c_);
    for (const auto& [k, v] : *r) {
      Scalar mono(1);
      for (const auto& [s, e] : k.m) {
        if (e > 0) mono = mono * Scalar(Symbol{s}).pow(e);
        else mono = mono * Scalar(Symbol{s}).conj().pow(-e);
      }
      GaussRat coeff = k.part == 0 ? v : v * GaussRat::i();
      m.at(k.i, k.j) += Scalar(coeff) * mono;
    }
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// LinearSystem

void LinearSystem::add_row(std::map<int, GaussRat> coeffs, Scalar offset) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->second.is_zero()) it = coeffs.erase(it);
    else ++it;
  }
  if (coeffs.empty() && offset.is_zero()) return;
  rows_.push_back(std::move(coeffs));
  offs_.push_back(std::move(offset));
}

void LinearSystem::add_equation(const Scalar& eq, const std::map<SymbolId, int>& index_of,
                                bool carrier_split) {
  // carrier monomial -> row under construction
  std::map<Monomial, std::map<int, GaussRat>> split_rows;
  std::map<Monomial, GaussRat> split_offs;
  std::map<int, GaussRat> whole_row;
  Scalar whole_off;

  for (const auto& [m, c] : eq.terms()) {
    int unknown = -1;
    Monomial carrier;
    for (const auto& [s, e] : m) {
      auto it = index_of.find(s);
      if (it != index_of.end()) {
        if (e != 1 || unknown >= 0)
          throw std::invalid_argument("equation not linear in unknowns: " + eq.str());
        unknown = it->second;
      } else {
        carrier.emplace_back(s, e);
      }
    }
    if (carrier_split) {
      if (unknown >= 0) split_rows[carrier][unknown] += c;
      else split_offs[carrier] += c;
    } else {
      if (unknown >= 0) {
        if (!carrier.empty())
          throw std::invalid_argument("unknown multiplied by symbols in constant-coefficient mode: " +
                                      eq.str());
        whole_row[unknown] += c;
      } else {
        Scalar mono(c);
        for (const auto& [s, e] : carrier) {
          if (e > 0) mono = mono * Scalar(Symbol{s}).pow(e);
          else mono = mono * Scalar(Symbol{s}).conj().pow(-e);
        }
        whole_off += mono;
      }
    }
  }
  if (carrier_split) {
    // Every carrier key contributes one row; pure-offset carriers too (their
    // row asserts offset = 0, i.e. an inconsistency or constraint).
    for (auto& [carrier, row] : split_rows) {
      GaussRat off;
      auto it = split_offs.find(carrier);
      if (it != split_offs.end()) {
        off = it->second;
        split_offs.erase(it);
      }
      add_row(std::move(row), Scalar(off));
    }
    for (auto& [carrier, off] : split_offs) {
      Scalar mono(off);
      for (const auto& [s, e] : carrier) {
        if (e > 0) mono = mono * Scalar(Symbol{s}).pow(e);
        else mono = mono * Scalar(Symbol{s}).conj().pow(-e);
      }
      // No unknowns at all in this carrier: the equation demands the term vanish.
      add_row({}, mono);
    }
  } else {
    add_row(std::move(whole_row), std::move(whole_off));
  }
}

LinearSystem::Echelon LinearSystem::eliminate() const {
  Echelon ech;
  ech.feasible = true;
  ech.rank = 0;
  ech.rows = rows_;
  ech.row_offsets = offs_;
  ech.pivot_of_unknown.assign(static_cast<std::size_t>(n_), -1);
  std::vector<bool> row_used(ech.rows.size(), false);
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
      if (row_used[r]) continue;
      auto it = ech.rows[r].find(col);
      if (it != ech.rows[r].end() && !it->second.is_zero()) {
        piv = static_cast<int>(r);
        break;
      }
    }
    if (piv < 0) continue;
    row_used[static_cast<std::size_t>(piv)] = true;
    ech.pivot_of_unknown[static_cast<std::size_t>(col)] = piv;
    ++ech.rank;
    auto& prow = ech.rows[static_cast<std::size_t>(piv)];
    GaussRat inv = prow.at(col).inv();
    for (auto& [k, v] : prow) v *= inv;
    ech.row_offsets[static_cast<std::size_t>(piv)] =
        Scalar(inv) * ech.row_offsets[static_cast<std::size_t>(piv)];
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
      if (r == static_cast<std::size_t>(piv)) continue;
      auto it = ech.rows[r].find(col);
      if (it == ech.rows[r].end() || it->second.is_zero()) continue;
      GaussRat f = it->second;
      for (const auto& [k, v] : prow) {
        auto jt = ech.rows[r].find(k);
        if (jt == ech.rows[r].end()) ech.rows[r].emplace(k, -(f * v));
        else {
          jt->second -= f * v;
          if (jt->second.is_zero()) ech.rows[r].erase(jt);
        }
      }
      ech.row_offsets[r] -= Scalar(f) * ech.row_offsets[static_cast<std::size_t>(piv)];
    }
  }
  for (std::size_t r = 0; r < ech.rows.size(); ++r) {
    if (row_used[r]) continue;
    if (!ech.rows[r].empty()) throw std::logic_error("elimination left an unprocessed pivot");
    if (!ech.row_offsets[r].is_zero()) {
      ech.residuals.push_back(ech.row_offsets[r]);
      if (ech.row_offsets[r].is_constant()) ech.feasible = false;
    }
  }
  return ech;
}

// ---------------------------------------------------------------------------
// solve_linear_in_symbols

namespace {

Symbol fresh_symbol(const std::string& base, SymbolKind kind) {
  if (!Symbols::exists(base) && (kind != SymbolKind::Complex || !Symbols::exists(base + "~")))
    return Symbols::make(base, kind);
  for (int k = 2;; ++k) {
    std::string name = base + "_" + std::to_string(k);
    if (!Symbols::exists(name) && (kind != SymbolKind::Complex || !Symbols::exists(name + "~")))
      return Symbols::make(name, kind);
  }
}

}  // namespace

SolutionSpace solve_linear_in_symbols(const std::vector<Scalar>& equations,
                                      const std::vector<Symbol>& unknowns,
                                      const std::string& param_prefix, SolveMode mode,
                                      bool carrier_split) {
  for (const auto& u : unknowns)
    if (Symbols::kind(u.id) == SymbolKind::Phase)
      throw std::invalid_argument("phase symbols cannot be linear unknowns");
  if (mode == SolveMode::Auto) {
    bool real_needed = false;
    for (const auto& u : unknowns)
      if (Symbols::kind(u.id) == SymbolKind::Real) real_needed = true;
    if (!real_needed) {
      for (const auto& eq : equations) {
        for (const auto& u : unknowns) {
          SymbolId p = Symbols::conj_partner(u.id);
          if (p != u.id && eq.contains(p)) { real_needed = true; break; }
        }
        if (real_needed) break;
      }
    }
    mode = real_needed ? SolveMode::Realified : SolveMode::ComplexLinear;
  }

  SolutionSpace sol;
  sol.realified = (mode == SolveMode::Realified);
  for (const auto& u : unknowns) sol.unknowns.push_back(u.id);
  const std::size_t nu = unknowns.size();

  if (mode == SolveMode::ComplexLinear) {
    std::map<SymbolId, int> index_of;
    for (std::size_t k = 0; k < nu; ++k) {
      index_of[unknowns[k].id] = static_cast<int>(k);
      SymbolId p = Symbols::conj_partner(unknowns[k].id);
      if (p != unknowns[k].id)
        for (const auto& eq : equations)
          if (eq.contains(p))
            throw std::invalid_argument("conjugated unknown in complex-linear mode: " +
                                        Symbols::name(p));
    }
    LinearSystem sys(static_cast<int>(nu));
    for (const auto& eq : equations) sys.add_equation(eq, index_of, carrier_split);
    auto ech = sys.eliminate();
    sol.feasible = ech.feasible;
    for (const auto& r : ech.residuals) sol.constraints.add(r);
    sol.offsets.assign(nu, Scalar());
    std::vector<std::size_t> free_idx;
    for (std::size_t k = 0; k < nu; ++k)
      if (ech.pivot_of_unknown[k] < 0) free_idx.push_back(k);
    for (std::size_t f = 0; f < free_idx.size(); ++f) {
      sol.params.push_back(
          fresh_symbol(param_prefix + std::to_string(f), SymbolKind::Complex));
      std::vector<GaussRat> vec(nu);
      vec[free_idx[f]] = GaussRat(1);
      for (std::size_t k = 0; k < nu; ++k) {
        int piv = ech.pivot_of_unknown[k];
        if (piv < 0) continue;
        auto it = ech.rows[static_cast<std::size_t>(piv)].find(static_cast<int>(free_idx[f]));
        if (it != ech.rows[static_cast<std::size_t>(piv)].end()) vec[k] = -it->second;
      }
      sol.basis.push_back(std::move(vec));
    }
    for (std::size_t k = 0; k < nu; ++k) {
      int piv = ech.pivot_of_unknown[k];
      if (piv >= 0) sol.offsets[k] = -ech.row_offsets[static_cast<std::size_t>(piv)];
    }
    return sol;
  }

  // Realified: unknown u = x_re + i x_im (real kind keeps a single coordinate).
  struct RealCoord { int re = -1, im = -1; };
  std::vector<RealCoord> coord(nu);
  std::map<SymbolId, std::pair<std::size_t, bool>> owner;  // symbol -> (unknown, is_conj)
  int ncoord = 0;
  for (std::size_t k = 0; k < nu; ++k) {
    coord[k].re = ncoord++;
    if (Symbols::kind(unknowns[k].id) == SymbolKind::Complex) coord[k].im = ncoord++;
    owner[unknowns[k].id] = {k, false};
    SymbolId p = Symbols::conj_partner(unknowns[k].id);
    if (p != unknowns[k].id) owner[p] = {k, true};
  }

  // Assemble complex rows over the real coordinates, then split Re/Im.
  std::vector<std::map<int, GaussRat>> crow;
  std::vector<Scalar> coff;
  for (const auto& eq : equations) {
    std::map<Monomial, std::map<int, GaussRat>> split_rows;
    std::map<Monomial, GaussRat> split_offs;
    std::map<int, GaussRat> whole_row;
    Scalar whole_off;
    for (const auto& [m, c] : eq.terms()) {
      int found = -1;
      bool is_conj = false;
      Monomial carrier;
      for (const auto& [s, e] : m) {
        auto it = owner.find(s);
        if (it != owner.end()) {
          if (e != 1 || found >= 0)
            throw std::invalid_argument("equation not linear in unknowns: " + eq.str());
          found = static_cast<int>(it->second.first);
          is_conj = it->second.second;
        } else {
          carrier.emplace_back(s, e);
        }
      }
      auto put = [&](std::map<int, GaussRat>& row) {
        const RealCoord& rc = coord[static_cast<std::size_t>(found)];
        row[rc.re] += c;
        if (rc.im >= 0) row[rc.im] += is_conj ? -(c * GaussRat::i()) : c * GaussRat::i();
      };
      if (carrier_split) {
        if (found >= 0) put(split_rows[carrier]);
        else split_offs[carrier] += c;
      } else {
        if (found >= 0) {
          if (!carrier.empty())
            throw std::invalid_argument("unknown multiplied by symbols in constant-coefficient mode");
          put(whole_row);
        } else {
          Scalar mono(c);
          for (const auto& [s, e] : carrier) {
            if (e > 0) mono = mono * Scalar(Symbol{s}).pow(e);
            else mono = mono * Scalar(Symbol{s}).conj().pow(-e);
          }
          whole_off += mono;
        }
      }
    }
    if (carrier_split) {
      for (auto& [carrier, row] : split_rows) {
        GaussRat off;
        auto it = split_offs.find(carrier);
        if (it != split_offs.end()) {
          off = it->second;
          split_offs.erase(it);
        }
        crow.push_back(std::move(row));
        coff.push_back(Scalar(off));
      }
      for (auto& [carrier, off] : split_offs) {
        Scalar mono(off);
        for (const auto& [s, e] : carrier) {
          if (e > 0) mono = mono * Scalar(Symbol{s}).pow(e);
          else mono = mono * Scalar(Symbol{s}).conj().pow(-e);
        }
        crow.push_back({});
        coff.push_back(mono);
      }
    } else {
      crow.push_back(std::move(whole_row));
      coff.push_back(std::move(whole_off));
    }
  }

  LinearSystem sys(ncoord);
  const GaussRat half(Rat(1, 2)), halfi = GaussRat(Rat(0), Rat(-1, 2));  // 1/(2i) = -i/2
  for (std::size_t r = 0; r < crow.size(); ++r) {
    std::map<int, GaussRat> re_row, im_row;
    for (const auto& [k, v] : crow[r]) {
      if (v.re != 0) re_row[k] = GaussRat(v.re);
      if (v.im != 0) im_row[k] = GaussRat(v.im);
    }
    Scalar off_conj = coff[r].conj();
    Scalar re_off = Scalar(half) * (coff[r] + off_conj);
    Scalar im_off = Scalar(halfi) * (coff[r] - off_conj);
    sys.add_row(std::move(re_row), std::move(re_off));
    sys.add_row(std::move(im_row), std::move(im_off));
  }
  auto ech = sys.eliminate();
  sol.feasible = ech.feasible;
  for (const auto& r : ech.residuals) sol.constraints.add(r);

  std::vector<std::size_t> free_idx;
  for (int k = 0; k < ncoord; ++k)
    if (ech.pivot_of_unknown[static_cast<std::size_t>(k)] < 0)
      free_idx.push_back(static_cast<std::size_t>(k));
  // Per-coordinate solution: value(coord) = offset + sum over free coords.
  auto coord_offset = [&](int k) -> Scalar {
    int piv = ech.pivot_of_unknown[static_cast<std::size_t>(k)];
    return piv < 0 ? Scalar() : -ech.row_offsets[static_cast<std::size_t>(piv)];
  };
  auto coord_coeff = [&](int k, std::size_t free_coord) -> GaussRat {
    if (static_cast<std::size_t>(k) == free_coord) return GaussRat(1);
    int piv = ech.pivot_of_unknown[static_cast<std::size_t>(k)];
    if (piv < 0) return GaussRat();
    auto it = ech.rows[static_cast<std::size_t>(piv)].find(static_cast<int>(free_coord));
    return it == ech.rows[static_cast<std::size_t>(piv)].end() ? GaussRat() : -it->second;
  };
  for (std::size_t f = 0; f < free_idx.size(); ++f)
    sol.params.push_back(fresh_symbol(param_prefix + std::to_string(f), SymbolKind::Real));
  sol.offsets.assign(nu, Scalar());
  for (std::size_t k = 0; k < nu; ++k) {
    sol.offsets[k] = coord_offset(coord[k].re);
    if (coord[k].im >= 0) sol.offsets[k] += Scalar::i() * coord_offset(coord[k].im);
  }
  for (std::size_t f = 0; f < free_idx.size(); ++f) {
    std::vector<GaussRat> vec(nu);
    for (std::size_t k = 0; k < nu; ++k) {
      GaussRat v = coord_coeff(coord[k].re, free_idx[f]);
      if (coord[k].im >= 0) v += GaussRat::i() * coord_coeff(coord[k].im, free_idx[f]);
      vec[k] = v;
    }
    sol.basis.push_back(std::move(vec));
  }
  return sol;
}

std::map<SymbolId, Scalar> SolutionSpace::generic_member() const {
  std::map<SymbolId, Scalar> m;
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    Scalar v = offsets[k];
    for (std::size_t p = 0; p < params.size(); ++p)
      v += Scalar(basis[p][k]) * Scalar(params[p]);
    m[unknowns[k]] = v;
  }
  return m;
}

std::map<SymbolId, Scalar> SolutionSpace::member(const std::vector<Scalar>& param_values) const {
  if (param_values.size() != params.size())
    throw std::invalid_argument("member: wrong number of parameter values");
  std::map<SymbolId, Scalar> m;
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    Scalar v = offsets[k];
    for (std::size_t p = 0; p < params.size(); ++p)
      v += Scalar(basis[p][k]) * param_values[p];
    m[unknowns[k]] = v;
  }
  return m;
}

// ---------------------------------------------------------------------------
// commutant / span_basis

std::vector<Mat> commutant(const std::vector<Mat>& mats, int n) {
  // Rows keyed by (generator, entry, carrier monomial of the generator
  // entries); conditions from different generators never merge.
  std::map<std::tuple<std::size_t, int, int, Monomial>, std::map<int, GaussRat>> rows;
  for (std::size_t g = 0; g < mats.size(); ++g) {
    const Mat& M = mats[g];
    if (M.rows() != n || M.cols() != n) throw std::invalid_argument("commutant: shape mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // entry (i,j) of X M - M X
        for (int k = 0; k < n; ++k) {
          for (const auto& [m, c] : M.at(k, j).terms()) rows[{g, i, j, m}][i * n + k] += c;
          for (const auto& [m, c] : M.at(i, k).terms()) rows[{g, i, j, m}][k * n + j] -= c;
        }
      }
  }
  LinearSystem sys(n * n);
  for (auto& [key, row] : rows) sys.add_row(std::move(row), Scalar());
  auto ech = sys.eliminate();
  std::vector<Mat> out;
  for (int free = 0; free < n * n; ++free) {
    if (ech.pivot_of_unknown[static_cast<std::size_t>(free)] >= 0) continue;
    Mat X(n, n);
    X.at(free / n, free % n) = Scalar(1);
    for (int k = 0; k < n * n; ++k) {
      int piv = ech.pivot_of_unknown[static_cast<std::size_t>(k)];
      if (piv < 0) continue;
      auto it = ech.rows[static_cast<std::size_t>(piv)].find(free);
      if (it != ech.rows[static_cast<std::size_t>(piv)].end())
        X.at(k / n, k % n) = Scalar(-it->second);
    }
    out.push_back(std::move(X));
  }
  return out;
}

std::vector<Mat> span_basis(const std::vector<Mat>& mats) {
  if (mats.empty()) return {};
  SpanBasis sb(mats.front().rows(), mats.front().cols(), false);
  for (const auto& m : mats) sb.add(m);
  return sb.basis();
}

}  // namespace ncg
