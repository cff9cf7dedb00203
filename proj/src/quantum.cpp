#include "lie/quantum.hpp"

#include <algorithm>
#include <sstream>

namespace lie {

namespace {

Rational sign_over_factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  Rational r(Integer(n % 2 == 0 ? 1 : -1), f);
  r.canonicalize();
  return r;
}

long integer_value(const Rational& t, const char* what) {
  if (t.get_den() != 1 || !t.get_num().fits_slong_p())
    throw InputError(std::string(what) + " must be an integer, got " + t.get_str());
  return t.get_num().get_si();
}

}  // namespace

// --- PbwBasis -------------------------------------------------------------------

PbwBasis::PbwBasis(const ChevalleyBasis& g, std::vector<int> symbols, int ideal_start)
    : g_(&g), symbols_(std::move(symbols)), positions_(2 * g.num_roots(), -1), ideal_start_(ideal_start) {
  for (int p = 0; p < size(); ++p) positions_.at(symbols_[p]) = p;
  for (int p : positions_)
    if (p < 0) throw InternalError("PBW basis does not cover every root generator");
}

std::shared_ptr<PbwBasis> PbwBasis::verma(const ChevalleyBasis& g, const NormalOrdering& ordering) {
  std::vector<int> s;
  for (int b : ordering.sequence()) s.push_back(g.negative(b));
  for (int b : ordering.sequence()) s.push_back(g.positive(b));
  return std::shared_ptr<PbwBasis>(new PbwBasis(g, std::move(s), g.num_roots()));
}

std::shared_ptr<PbwBasis> PbwBasis::twisted(const ChevalleyBasis& g, const NormalOrdering& ordering, int k) {
  const int n = g.num_roots();
  if (k < 1 || k > n + 1)
    throw InputError("suffix index k=" + std::to_string(k) + " outside [1, " + std::to_string(n + 1) + "]");
  std::vector<int> s;
  for (int j = 0; j < n; ++j) s.push_back(j < k - 1 ? g.negative(ordering.at(j)) : g.positive(ordering.at(j)));
  for (int j = 0; j < n; ++j) s.push_back(j < k - 1 ? g.positive(ordering.at(j)) : g.negative(ordering.at(j)));
  return std::shared_ptr<PbwBasis>(new PbwBasis(g, std::move(s), n));
}

bool PbwBasis::same_quotient(const PbwBasis& o) const {
  if (g_ != o.g_ || ideal_start_ != o.ideal_start_) return false;
  std::vector<int> a(symbols_.begin() + ideal_start_, symbols_.end());
  std::vector<int> b(o.symbols_.begin() + o.ideal_start_, o.symbols_.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

IntVec PbwBasis::weight(const Mono& m) const {
  IntVec w(g_->roots().rank(), 0);
  for (int p = 0; p < size(); ++p) {
    if (m[p] == 0) continue;
    const IntVec& v = g_->weight(symbols_[p]);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += m[p] * v[i];
  }
  return w;
}

bool PbwBasis::in_ideal(const Mono& m) const {
  for (int p = ideal_start_; p < size(); ++p)
    if (m[p] != 0) return true;
  return false;
}

const PbwBasis::Expansion& PbwBasis::leftmul(int pos, const Mono& m) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return leftmul_locked(pos, m);
}

const PbwBasis::Expansion& PbwBasis::leftmul_locked(int pos, const Mono& m) const {
  auto key = std::make_pair(pos, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const int rank = g_->roots().rank();
  int q = -1;
  for (int p = 0; p < size(); ++p) {
    if (m[p] != 0) {
      q = p;
      break;
    }
  }
  Expansion result;
  if (q < 0 || pos <= q) {
    Mono m2 = m;
    ++m2[pos];
    result.emplace_back(CartanPoly(rank, Rational(1)), std::move(m2));
  } else {
    // x_pos x_q M1 = x_q (x_pos M1) + [x_pos, x_q] M1
    Mono m1 = m;
    --m1[q];
    std::map<Mono, CartanPoly> acc;
    auto accumulate = [&](const Mono& mono, const CartanPoly& c) {
      auto [it, inserted] = acc.try_emplace(mono, c);
      if (!inserted) it->second += c;
    };
    std::vector<Rational> shift(rank);
    const IntVec& wq = g_->weight(symbols_[q]);
    for (int i = 0; i < rank; ++i) shift[i] = -g_->roots().pairing_simple(wq, i);
    const Expansion inner = leftmul_locked(pos, m1);
    for (const auto& [c, m2] : inner) {
      // x_q c(h) = c(h - wt x_q) x_q
      CartanPoly cs = c.shifted(shift);
      const Expansion outer = leftmul_locked(q, m2);
      for (const auto& [d, m3] : outer) accumulate(m3, cs * d);
    }
    for (const auto& [s, k] : g_->bracket(symbols_[pos], symbols_[q])) {
      if (g_->is_cartan_symbol(s)) {
        accumulate(m1, CartanPoly::variable(rank, s - 2 * g_->num_roots()) * Rational(k));
      } else {
        const Expansion br = leftmul_locked(positions_[s], m1);
        for (const auto& [d, m3] : br) accumulate(m3, d * Rational(k));
      }
    }
    for (auto& [mono, c] : acc)
      if (!c.is_zero()) result.emplace_back(c, mono);
  }
  return memo_.emplace(std::move(key), std::move(result)).first->second;
}

// --- UElement -------------------------------------------------------------------

void UElement::add_term(const Mono& m, const LocRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UElement& UElement::operator+=(const UElement& o) {
  if (!basis_) basis_ = o.basis_;
  if (o.basis_ && basis_ != o.basis_) throw InternalError("adding elements over different PBW bases");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UElement& UElement::operator-=(const UElement& o) { return *this += -o; }

UElement UElement::operator-() const {
  UElement r(basis_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

UElement UElement::scaled(const LocRat& c) const {
  UElement r(basis_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, c * v);
  return r;
}

int UElement::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int k = 0;
    for (int e : m) k += e;
    d = std::max(d, k);
  }
  return d;
}

LocRat UElement::scalar_part() const {
  if (!basis_) return LocRat(0L);
  auto it = terms_.find(Mono(basis_->size(), 0));
  return it == terms_.end() ? LocRat(0L) : it->second;
}

bool UElement::has_polynomial_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_polynomial(); });
}

// --- QuantumContext ---------------------------------------------------------------

QuantumContext::QuantumContext(const RootSystem& rs, ChevalleyBasis::Options options)
    : rs_(&rs),
      g_(std::make_unique<ChevalleyBasis>(rs, options)),
      ring_(std::make_unique<CoefficientRing>(rs, RingKind::kQuantum)) {
  init(default_normal_ordering(rs));
}

QuantumContext::QuantumContext(const RootSystem& rs, const NormalOrdering& ordering, ChevalleyBasis::Options options)
    : rs_(&rs),
      g_(std::make_unique<ChevalleyBasis>(rs, options)),
      ring_(std::make_unique<CoefficientRing>(rs, RingKind::kQuantum)) {
  init(ordering);
}

void QuantumContext::init(const NormalOrdering& ordering) {
  if (!validate_normal_ordering(*rs_, ordering.sequence())) throw InputError("not a normal ordering");
  verma_ = PbwBasis::verma(*g_, ordering);
}

std::shared_ptr<PbwBasis> QuantumContext::twisted_basis(const NormalOrdering& ordering, int k) const {
  std::lock_guard<std::mutex> lock(twisted_mutex_);
  auto key = std::make_pair(ordering.sequence(), k);
  auto it = twisted_.find(key);
  if (it == twisted_.end()) it = twisted_.emplace(key, PbwBasis::twisted(*g_, ordering, k)).first;
  return it->second;
}

UElement QuantumContext::scalar(const std::shared_ptr<const PbwBasis>& basis, const LocRat& c) const {
  UElement u(basis);
  u.add_term(UElement::Mono(basis->size(), 0), c);
  return u;
}

UElement QuantumContext::generator(const std::shared_ptr<const PbwBasis>& basis, int symbol) const {
  if (!g_->is_root_symbol(symbol)) throw InputError("not a root generator");
  UElement u(basis);
  UElement::Mono m(basis->size(), 0);
  m[basis->position(symbol)] = 1;
  u.add_term(m, LocRat(*ring_, Rational(1)));
  return u;
}

UElement QuantumContext::from_lie(const std::shared_ptr<const PbwBasis>& basis, const LieElement& x) const {
  UElement u(basis);
  for (const auto& [s, c] : x.terms()) {
    if (g_->is_cartan_symbol(s)) {
      u += scalar(basis, LocRat::variable(*ring_, s - 2 * g_->num_roots()) * LocRat(c));
    } else {
      u += generator(basis, s).scaled(LocRat(c));
    }
  }
  return u;
}

LocRat QuantumContext::h_named(const IntVec& v, long shift) const { return LocRat::named(*ring_, v, Rational(shift)); }

UElement QuantumContext::shifted_apply(int pos, const UElement& u) const {
  const PbwBasis& b = *u.basis();
  const int symbol = b.symbol_at(pos);
  const IntVec shift = negate(g_->weight(symbol));
  UElement out(u.basis());
  for (const auto& [m, phi] : u.terms()) {
    // x phi(h) = phi(h - wt x) x
    LocRat ps = phi.weight_shift(shift);
    for (const auto& [c, m2] : b.leftmul(pos, m)) out.add_term(m2, ps * LocRat(*ring_, c));
  }
  return out;
}

UElement QuantumContext::apply_generator(int symbol, const UElement& u) const {
  return shifted_apply(u.basis()->position(symbol), u);
}

UElement QuantumContext::multiply(const UElement& a, const UElement& b) const {
  if (a.basis() != b.basis()) throw InternalError("multiplying elements over different PBW bases");
  UElement out(a.basis());
  const PbwBasis& basis = *a.basis();
  for (const auto& [m, phi] : a.terms()) {
    UElement t = b;
    for (int p = basis.size() - 1; p >= 0; --p)
      for (int e = 0; e < m[p]; ++e) t = shifted_apply(p, t);
    out += t.scaled(phi);
  }
  return out;
}

UElement QuantumContext::right_scalar(const UElement& u, const LocRat& phi) const {
  UElement out(u.basis());
  for (const auto& [m, c] : u.terms()) out.add_term(m, c * phi.weight_shift(negate(u.basis()->weight(m))));
  return out;
}

UElement QuantumContext::rebase(const UElement& u, const std::shared_ptr<const PbwBasis>& target) const {
  if (u.basis() == target) return u;
  UElement out(target);
  const PbwBasis& src = *u.basis();
  for (const auto& [m, phi] : u.terms()) {
    UElement t = one(target);
    for (int p = src.size() - 1; p >= 0; --p)
      for (int e = 0; e < m[p]; ++e) t = apply_generator(src.symbol_at(p), t);
    out += t.scaled(phi);
  }
  return out;
}

UElement QuantumContext::quotient(const UElement& u) const {
  UElement out(u.basis());
  for (const auto& [m, c] : u.terms())
    if (!u.basis()->in_ideal(m)) out.add_term(m, c);
  return out;
}

UElement QuantumContext::act_generator(int symbol, const UElement& v) const {
  return quotient(apply_generator(symbol, v));
}

UElement QuantumContext::act(const LieElement& x, const UElement& v) const {
  UElement out(v.basis());
  for (const auto& [s, c] : x.terms()) {
    if (g_->is_cartan_symbol(s)) {
      out += v.scaled(LocRat::variable(*ring_, s - 2 * g_->num_roots()) * LocRat(c));
    } else {
      out += apply_generator(s, v).scaled(LocRat(c));
    }
  }
  return quotient(out);
}

UElement QuantumContext::p_alpha_t(int alpha, const Rational& t, const UElement& v) const {
  const long tt = integer_value(t, "the parameter t of p_alpha(t)");
  const int e = g_->positive(alpha), f = g_->negative(alpha);
  UElement result = v;
  UElement term = v;
  const int bound = 4 * (v.degree() + 2) * (rs_->size() + 1) + 8;
  for (int n = 1;; ++n) {
    term = act_generator(e, term);
    if (term.is_zero()) return result;
    if (n > bound) throw InternalError("e_alpha failed to act nilpotently");
    UElement fn = term;
    for (int i = 0; i < n; ++i) fn = act_generator(f, fn);
    LocRat coeff(*ring_, sign_over_factorial(n));
    for (int j = 1; j <= n; ++j) coeff *= LocRat::inverse_factor(*ring_, alpha, tt + j);
    result += fn.scaled(coeff);
  }
}

UElement QuantumContext::extremal_projector(const UElement& v, const NormalOrdering& ordering) const {
  if (!v.basis()->same_quotient(*verma_)) throw InputError("extremal projector acts on vectors of V");
  UElement r = v;
  for (int b : ordering.sequence()) r = p_alpha_t(b, rs_->rho(b), r);
  return r;
}

UElement QuantumContext::ad_e(int alpha, const UElement& u) const {
  const int e = g_->positive(alpha);
  return apply_generator(e, u) - multiply(u, generator(u.basis(), e));
}

UElement QuantumContext::zhelobenko_q_alpha(int alpha, const UElement& u, int max_depth) const {
  const int f = g_->negative(alpha);
  UElement result = u;
  UElement term = u;
  UElement fpow = one(u.basis());
  for (int n = 1;; ++n) {
    term = ad_e(alpha, term);
    if (term.is_zero()) return result;
    if (n > max_depth)
      throw EngineError("series does not terminate on this input (depth bound " + std::to_string(max_depth) +
                        " reached for root " + lie::to_string(rs_->root(alpha)) +
                        "); inputs need polynomial Cartan coefficients");
    fpow = apply_generator(f, fpow);
    LocRat ginv(*ring_, sign_over_factorial(n));
    for (int j = 1; j <= n; ++j) ginv *= LocRat::inverse_factor(*ring_, alpha, 1 - j);
    result += multiply(term, right_scalar(fpow, ginv));
  }
}

UElement QuantumContext::zhelobenko_qw(const NormalOrdering& ordering, int k, const UElement& x,
                                       int max_depth) const {
  const int n = rs_->size();
  auto source = twisted_basis(ordering, k);
  if (!x.basis()->same_quotient(*source)) throw InputError("vector is not in the module V_w for this ordering");
  if (k == n + 1) return quotient(rebase(x, verma_));

  // First step: the series on the representative as given.
  auto next = twisted_basis(ordering, k + 1);
  UElement cur = quotient(zhelobenko_q_alpha(ordering.at(k - 1), rebase(x, next), max_depth));

  // Later steps act on canonical representatives phi * M of V_{w_j}. Modulo
  // U'e_alpha, q'_alpha(phi x) = phi(h + alpha(h)) q'_alpha(x), so the series
  // only ever runs on coefficient-free monomials.
  for (int j = k + 1; j <= n; ++j) {
    const int alpha = ordering.at(j - 1);
    auto target = twisted_basis(ordering, j + 1);
    UElement out(target);
    std::map<UElement::Mono, UElement> images;
    for (const auto& [m, phi] : cur.terms()) {
      auto it = images.find(m);
      if (it == images.end()) {
        UElement mono(cur.basis());
        mono.add_term(m, LocRat(*ring_, Rational(1)));
        it = images.emplace(m, quotient(zhelobenko_q_alpha(alpha, rebase(mono, target), max_depth))).first;
      }
      out += it->second.scaled(phi.weight_shift(rs_->root(alpha)));
    }
    cur = std::move(out);
  }
  return quotient(rebase(cur, verma_));
}

std::string QuantumContext::to_string(const UElement& u, bool as_vector) const {
  if (u.is_zero()) return "0";
  const PbwBasis& b = *u.basis();
  auto gen_name = [&](int pos) {
    const int s = b.symbol_at(pos);
    const IntVec& w = g_->weight(s);
    return g_->is_positive_symbol(s) ? "E" + lie::to_string(w) : "F" + lie::to_string(negate(w));
  };
  // Terms ordered by total degree, then by monomial.
  std::vector<const UElement::Terms::value_type*> terms;
  for (const auto& t : u.terms()) terms.push_back(&t);
  auto deg = [](const UElement::Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](auto* x, auto* y) {
    int dx = deg(x->first), dy = deg(y->first);
    if (dx != dy) return dx < dy;
    return x->first > y->first;
  });
  std::string out;
  for (const auto* t : terms) {
    const auto& [m, phi] = *t;
    std::vector<std::string> factors;
    UElement::Mono left(m.size(), 0);
    for (int p = 0; p < b.ideal_start(); ++p) {
      if (m[p] == 0) continue;
      left[p] = m[p];
      factors.push_back(gen_name(p) + (m[p] > 1 ? "^" + std::to_string(m[p]) : ""));
    }
    // phi * L * R = L * phi(h + wt L) * R
    LocRat mid = phi.weight_shift(b.weight(left));
    std::vector<std::string> right;
    for (int p = b.ideal_start(); p < b.size(); ++p)
      if (m[p] != 0) right.push_back(gen_name(p) + (m[p] > 1 ? "^" + std::to_string(m[p]) : ""));
    bool negative = false;
    std::string coeff;
    if (mid.is_constant()) {
      Rational c = mid.constant_value();
      negative = sgn(c) < 0;
      Rational mag = abs(c);
      if (mag != 1 || (factors.empty() && right.empty() && !as_vector)) coeff = mag.get_str();
    } else {
      coeff = mid.needs_parens() ? "(" + mid.to_string() + ")" : mid.to_string();
    }
    if (!coeff.empty()) factors.push_back(coeff);
    factors.insert(factors.end(), right.begin(), right.end());
    if (as_vector) factors.push_back("v0");
    std::string term;
    for (std::size_t i = 0; i < factors.size(); ++i) term += (i ? " * " : "") + factors[i];
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out;
}

}  // namespace lie
