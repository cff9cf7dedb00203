#include "lie/classical.hpp"

#include <algorithm>
#include <sstream>

namespace lie {

namespace {

using Mono = PolyFunc::Mono;

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

Rational sign_over_factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  Rational r(Integer(n % 2 == 0 ? 1 : -1), f);
  r.canonicalize();
  return r;
}

}  // namespace

// --- PolyFunc -----------------------------------------------------------------

PolyFunc::PolyFunc(const LocRat& c) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

PolyFunc PolyFunc::symbol(int s, int power) {
  PolyFunc f;
  if (power == 0) return PolyFunc(1L);
  f.terms_.emplace(Mono{{s, power}}, LocRat(1L));
  return f;
}

int PolyFunc::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int k = 0;
    for (const auto& [s, e] : m) k += e;
    d = std::max(d, k);
  }
  return d;
}

LocRat PolyFunc::constant_part() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? LocRat(0L) : it->second;
}

bool PolyFunc::uses_symbol(int s) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [t, e] : m)
      if (t == s) return true;
  return false;
}

void PolyFunc::add_term(const Mono& m, const LocRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyFunc& PolyFunc::operator+=(const PolyFunc& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyFunc& PolyFunc::operator-=(const PolyFunc& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyFunc PolyFunc::operator-() const {
  PolyFunc r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

PolyFunc PolyFunc::operator*(const PolyFunc& o) const {
  PolyFunc r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

PolyFunc PolyFunc::operator*(const LocRat& c) const {
  PolyFunc r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

PolyFunc PolyFunc::pow(int n) const {
  if (n < 0) throw InputError("negative power of a function");
  PolyFunc result(1L), base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

PolyFunc PolyFunc::filtered(const std::function<bool(int)>& keep) const {
  PolyFunc r;
  for (const auto& [m, c] : terms_) {
    bool ok = std::all_of(m.begin(), m.end(), [&](const auto& se) { return keep(se.first); });
    if (ok) r.terms_.emplace(m, c);
  }
  return r;
}

PolyFunc PolyFunc::substitute(const std::map<int, PolyFunc>& values) const {
  std::map<std::pair<int, int>, PolyFunc> powers;
  auto power_of = [&](int s, int e) -> const PolyFunc& {
    auto key = std::make_pair(s, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, values.at(s).pow(e)).first;
    return it->second;
  };
  PolyFunc r;
  for (const auto& [m, c] : terms_) {
    PolyFunc term;
    Mono kept;
    for (const auto& [s, e] : m)
      if (!values.count(s)) kept.emplace_back(s, e);
    term.terms_.emplace(kept, c);
    for (const auto& [s, e] : m) {
      if (!values.count(s)) continue;
      term = term * power_of(s, e);
      if (term.is_zero()) break;
    }
    r += term;
  }
  return r;
}

// --- Carrier ------------------------------------------------------------------

bool Carrier::contains(const PolyFunc& f) const {
  for (const auto& [m, c] : f.terms())
    for (const auto& [s, e] : m)
      if (s < 0 || s >= static_cast<int>(allowed.size()) || !allowed[s]) return false;
  return true;
}

std::string Carrier::name() const {
  switch (kind) {
    case Kind::kG: return "g";
    case Kind::kB: return "b";
    case Kind::kBw: return "b^w";
  }
  return "?";
}

// --- ClassicalContext -----------------------------------------------------------

ClassicalContext::ClassicalContext(const RootSystem& rs, ChevalleyBasis::Options options)
    : rs_(&rs),
      g_(std::make_unique<ChevalleyBasis>(rs, options)),
      ring_(std::make_unique<CoefficientRing>(rs, RingKind::kClassical)) {
  const int n = rs.size();
  const int r = rs.rank();
  derivative_.assign(n, std::vector<PolyFunc>(2 * n));
  cartan_direction_.assign(n, std::vector<Rational>(r));
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < r; ++i) {
      IntVec ei(r, 0);
      ei[i] = 1;
      cartan_direction_[a][i] = rs.pairing(ei, a);
    }
    const IntVec& alpha = rs.root(a);
    for (int s = 0; s < 2 * n; ++s) {
      const IntVec& delta = g_->weight(s);
      if (delta == negate(alpha)) {
        derivative_[a][s] = h_hat_root(a);
        continue;
      }
      const int up = g_->symbol_for(add(delta, alpha));
      if (up < 0) continue;
      // {E[alpha], E[delta]} = -N_{alpha, -delta-alpha} E[delta+alpha]
      const int other = g_->symbol_for(negate(add(delta, alpha)));
      const int nc = g_->structure_constant(g_->positive(a), other);
      derivative_[a][s] = PolyFunc::symbol(up) * Rational(-nc);
    }
  }
}

Carrier ClassicalContext::carrier_g() const {
  return {Carrier::Kind::kG, std::vector<bool>(2 * rs_->size(), true)};
}

Carrier ClassicalContext::carrier_b() const {
  Carrier c{Carrier::Kind::kB, std::vector<bool>(2 * rs_->size(), false)};
  for (int a = 0; a < rs_->size(); ++a) c.allowed[g_->negative(a)] = true;
  return c;
}

Carrier ClassicalContext::carrier_bw(const WeylElement& w) const {
  Carrier c{Carrier::Kind::kBw, std::vector<bool>(2 * rs_->size(), false)};
  for (int a = 0; a < rs_->size(); ++a) {
    // E[-gamma] for gamma = w(alpha).
    c.allowed[g_->symbol_for(negate(w.apply(rs_->root(a))))] = true;
  }
  return c;
}

PolyFunc ClassicalContext::e_hat(const IntVec& gamma) const {
  int s = g_->symbol_for(gamma);
  if (s < 0) throw InputError("E" + lie::to_string(gamma) + " is not a root coordinate");
  return PolyFunc::symbol(s);
}

PolyFunc ClassicalContext::h_hat(const IntVec& v) const { return PolyFunc(LocRat::named(*ring_, v)); }

PolyFunc ClassicalContext::poisson_e(int alpha, const PolyFunc& f) const {
  PolyFunc out;
  const int e_alpha = g_->positive(alpha);
  for (const auto& [m, c] : f.terms()) {
    // Coefficient: {E[alpha], x_i} = -alpha_i(h_alpha) E[alpha].
    LocRat dc = c.directional_derivative(cartan_direction_[alpha]);
    if (!dc.is_zero()) out.add_term(mono_mul(m, Mono{{e_alpha, 1}}), -dc);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto [s, e] = m[i];
      const PolyFunc& ds = derivative_[alpha][s];
      if (ds.is_zero()) continue;
      Mono rest = m;
      if (--rest[i].second == 0) rest.erase(rest.begin() + static_cast<long>(i));
      PolyFunc part;
      part.add_term(rest, c * LocRat(static_cast<long>(e)));
      out += part * ds;
    }
  }
  return out;
}

PolyFunc ClassicalContext::reduce_mod_I(const PolyFunc& f) const {
  return f.filtered([this](int s) { return !g_->is_positive_symbol(s); });
}

PolyFunc ClassicalContext::e_action(int alpha, const PolyFunc& f) const {
  PolyFunc out;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto [s, e] = m[i];
      if (g_->is_positive_symbol(s)) throw InputError("function is not on carrier b");
      const PolyFunc& ds = derivative_[alpha][s];
      if (ds.is_zero()) continue;
      // The derivative lands in I when it is a positive coordinate.
      if (ds.terms().size() == 1 && !ds.terms().begin()->first.empty() &&
          g_->is_positive_symbol(ds.terms().begin()->first.front().first))
        continue;
      Mono rest = m;
      if (--rest[i].second == 0) rest.erase(rest.begin() + static_cast<long>(i));
      PolyFunc part;
      part.add_term(rest, c * LocRat(static_cast<long>(e)));
      out += part * ds;
    }
  }
  return out;
}

PolyFunc ClassicalContext::p_alpha(int alpha, const PolyFunc& f) const {
  PolyFunc result = f;
  PolyFunc term = f;
  const PolyFunc c = c_coord(alpha);
  // Each application lowers the height of the support or consumes a symbol.
  const int bound = (f.degree() + 1) * (2 * rs_->size() + 2) + 2;
  for (int n = 1;; ++n) {
    term = e_action(alpha, term);
    if (term.is_zero()) return result;
    if (n > bound) throw InternalError("P_alpha series failed to terminate");
    result += term * c.pow(n) * (LocRat::inverse_factor(*ring_, alpha, 0, n) * LocRat(sign_over_factorial(n)));
  }
}

PolyFunc ClassicalContext::project(const PolyFunc& f, const NormalOrdering& ordering) const {
  return project_partial(f, ordering, 1);
}

PolyFunc ClassicalContext::project_partial(const PolyFunc& f, const NormalOrdering& ordering, int k) const {
  const int n = rs_->size();
  if (k < 1 || k > n + 1)
    throw InputError("suffix index k=" + std::to_string(k) + " outside [1, " + std::to_string(n + 1) + "]");
  if (!carrier_b().contains(f)) throw InputError("function is not on carrier b");
  PolyFunc r = f;
  for (int pos = k - 1; pos < n; ++pos) r = p_alpha(ordering.at(pos), r);
  return r;
}

LieVector<PolyFunc> ClassicalContext::generic_point() const {
  const int r = rs_->rank();
  LieVector<PolyFunc> y;
  // Coroot coordinates of h as linear forms in x_i = alpha_i(h).
  std::vector<std::vector<Rational>> cols(r);
  for (int i = 0; i < r; ++i) {
    std::vector<Rational> unit(r, Rational(0));
    unit[i] = 1;
    cols[i] = g_->cartan_from_root_values(unit);
  }
  for (int j = 0; j < r; ++j) {
    std::vector<Rational> coeffs(r);
    for (int i = 0; i < r; ++i) coeffs[i] = cols[i][j];
    y.add(g_->cartan(j), PolyFunc(LocRat(*ring_, CartanPoly::linear(coeffs, Rational(0)))));
  }
  for (int a = 0; a < rs_->size(); ++a) y.add(g_->positive(a), c_coord(a));
  return y;
}

ClassicalContext::SymbolicReduction ClassicalContext::symbolic_partial_decompose(const NormalOrdering& ordering,
                                                                                 int k) const {
  auto over_root = [this](const PolyFunc& c, int beta) {
    return c * LocRat::inverse_factor(*ring_, beta);
  };
  auto red = reduce_borel<PolyFunc>(*g_, generic_point(), ordering, k, over_root);
  SymbolicReduction out;
  out.steps = std::move(red.steps);
  out.reduced = std::move(red.reduced);
  for (int pos = 0; pos < k - 1; ++pos) {
    const int beta = ordering.at(pos);
    out.coordinates[g_->negative(beta)] = out.reduced.coeff(g_->positive(beta));
  }
  return out;
}

PolyFunc ClassicalContext::zhelobenko_classical(const NormalOrdering& ordering, int k, const PolyFunc& f) const {
  const WeylElement w = weyl_from_suffix(*rs_, ordering, k);
  if (!carrier_bw(w).contains(f)) throw InputError("function is not on carrier b^w");
  auto red = symbolic_partial_decompose(ordering, k);
  std::map<int, PolyFunc> values = red.coordinates;
  for (int pos = k - 1; pos < rs_->size(); ++pos) values[g_->positive(ordering.at(pos))] = PolyFunc();
  return f.substitute(values);
}

PolyFunc ClassicalContext::zhelobenko_classical(const WeylElement& w, const PolyFunc& f) const {
  auto adapted = adapted_normal_ordering(*rs_, w);
  return zhelobenko_classical(adapted.ordering, adapted.k, f);
}

PolyFunc ClassicalContext::zhelobenko_series_alpha(int alpha, const PolyFunc& f, SeriesMode mode,
                                                   int max_depth) const {
  const bool truncate = mode == SeriesMode::kTruncated;
  PolyFunc result = truncate ? reduce_mod_I(f) : f;
  PolyFunc term = result;
  const PolyFunc c = c_coord(alpha);
  for (int n = 1;; ++n) {
    term = poisson_e(alpha, term);
    if (truncate) term = reduce_mod_I(term);
    if (term.is_zero()) return result;
    if (n > max_depth)
      throw EngineError("series does not terminate on this representative (depth bound " + std::to_string(max_depth) +
                        " reached for root " + lie::to_string(rs_->root(alpha)) + ")");
    result += term * c.pow(n) * (LocRat::inverse_factor(*ring_, alpha, 0, n) * LocRat(sign_over_factorial(n)));
  }
}

PolyFunc ClassicalContext::zhelobenko_classical_series(const NormalOrdering& ordering, int k, const PolyFunc& f,
                                                       SeriesMode mode, int max_depth) const {
  const WeylElement w = weyl_from_suffix(*rs_, ordering, k);
  if (!carrier_bw(w).contains(f)) throw InputError("function is not on carrier b^w");
  PolyFunc r = f;
  for (int pos = k - 1; pos < rs_->size(); ++pos) r = zhelobenko_series_alpha(ordering.at(pos), r, mode, max_depth);
  return reduce_mod_I(r);
}

Rational ClassicalContext::eval(const PolyFunc& f, const LieElement& y) const {
  std::vector<Rational> x(rs_->rank());
  for (int i = 0; i < rs_->rank(); ++i) x[i] = root_value(*g_, y, rs_->simple_index(i));
  Rational total = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = 1;
    for (const auto& [s, e] : m) {
      const Rational v = y.coeff(g_->symbol_for(negate(g_->weight(s))));
      for (int i = 0; i < e; ++i) t *= v;
      if (sgn(t) == 0) break;
    }
    if (sgn(t) == 0) continue;
    total += t * c.eval(x);
  }
  return total;
}

std::string ClassicalContext::to_string(const PolyFunc& f) const {
  if (f.is_zero()) return "0";
  auto sym_key = [this](int s) {
    const IntVec& v = g_->weight(s);
    int h = 0;
    for (int x : v) h += x < 0 ? -x : x;
    return std::make_pair(h, v);
  };
  auto mono_str = [&](const Mono& m) {
    std::vector<std::pair<int, int>> items(m.begin(), m.end());
    std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) { return sym_key(a.first) < sym_key(b.first); });
    std::string out;
    for (const auto& [s, e] : items) {
      if (!out.empty()) out += '*';
      out += "E" + lie::to_string(g_->weight(s));
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  };
  std::vector<const PolyFunc::Terms::value_type*> terms;
  for (const auto& t : f.terms()) terms.push_back(&t);
  std::vector<std::size_t> idx(terms.size());
  std::vector<std::pair<int, std::vector<std::pair<std::pair<int, IntVec>, int>>>> keys(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    idx[i] = i;
    int deg = 0;
    for (const auto& [s, e] : terms[i]->first) {
      deg += e;
      keys[i].second.emplace_back(sym_key(s), e);
    }
    std::sort(keys[i].second.begin(), keys[i].second.end());
    keys[i].first = deg;
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::string out;
  for (std::size_t i : idx) {
    const auto& [m, c] = *terms[i];
    std::string ms = mono_str(m);
    std::string cs = c.to_string();
    std::string term;
    if (ms.empty()) {
      term = cs;
    } else if (c.is_constant() && c.constant_value() == 1) {
      term = ms;
    } else if (c.is_constant() && c.constant_value() == -1) {
      term = "-" + ms;
    } else if (c.is_constant()) {
      term = cs + "*" + ms;
    } else if (c.needs_parens()) {
      term = "(" + cs + ")*" + ms;
    } else {
      term = cs + "*" + ms;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-' && !(c.needs_parens() && !ms.empty())) {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace lie
