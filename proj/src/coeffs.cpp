#include "lie/coeffs.hpp"

#include <algorithm>
#include <sstream>

namespace lie {

CoefficientRing::CoefficientRing(const RootSystem& rs, RingKind kind) : rs_(&rs), kind_(kind) {
  if (rs.rank() > kMaxCartanVars)
    throw InputError("coefficient rings support rank <= " + std::to_string(kMaxCartanVars));
  for (int a = 0; a < rs.size(); ++a) {
    IntVec c = kind == RingKind::kClassical ? rs.root(a) : rs.coroot(a);
    forms_.push_back(CartanPoly::linear(c, 0));
    form_coeffs_.push_back(std::move(c));
  }
}

std::string CoefficientRing::var_name(int i) const {
  IntVec e(rs_->rank(), 0);
  e[i] = 1;
  return std::string(kind_ == RingKind::kClassical ? "H" : "h") + to_string(e);
}

std::string CoefficientRing::factor_name(int root, long shift) const {
  std::string base = std::string(kind_ == RingKind::kClassical ? "H" : "h") + to_string(rs_->root(root));
  if (shift == 0) return base;
  std::ostringstream os;
  os << '(' << base << (shift > 0 ? "+" : "-") << (shift > 0 ? shift : -shift) << ')';
  return os.str();
}

std::vector<Rational> CoefficientRing::named_form(const IntVec& v) const {
  if (static_cast<int>(v.size()) != rs_->rank())
    throw InputError("vector " + to_string(v) + " has the wrong length for rank " + std::to_string(rs_->rank()));
  std::vector<Rational> out(v.begin(), v.end());
  if (kind_ == RingKind::kQuantum) {
    if (auto a = rs_->find_positive(v)) {
      const IntVec& b = rs_->coroot(*a);
      out.assign(b.begin(), b.end());
    } else if (auto n = rs_->find_positive(negate(v))) {
      const IntVec& b = rs_->coroot(*n);
      out.clear();
      for (int x : b) out.emplace_back(-x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

LocRat::LocRat(const Rational& c) : num_(0, c) {}

LocRat::LocRat(const CoefficientRing& ring, const Rational& c) : ring_(&ring), num_(ring.nvars(), c) {}

LocRat::LocRat(const CoefficientRing& ring, CartanPoly num, Denominator den)
    : ring_(&ring), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

LocRat LocRat::variable(const CoefficientRing& ring, int i) {
  return LocRat(ring, CartanPoly::variable(ring.nvars(), i));
}

LocRat LocRat::factor(const CoefficientRing& ring, int root, long shift) {
  if (shift != 0 && !ring.allows_shift()) throw InputError("classical factors cannot be shifted");
  return LocRat(ring, ring.form(root) + CartanPoly(ring.nvars(), Rational(shift)));
}

LocRat LocRat::inverse_factor(const CoefficientRing& ring, int root, long shift, int power) {
  if (shift != 0 && !ring.allows_shift()) throw InputError("classical factors cannot be shifted");
  Denominator den;
  if (power > 0) den[{root, shift}] = power;
  return LocRat(ring, CartanPoly(ring.nvars(), Rational(1)), std::move(den));
}

LocRat LocRat::named(const CoefficientRing& ring, const IntVec& v, const Rational& shift) {
  return LocRat(ring, CartanPoly::linear(ring.named_form(v), shift));
}

void LocRat::adopt_ring(const CoefficientRing* r) {
  if (!r) return;
  if (!ring_) {
    ring_ = r;
    if (num_.nvars() < r->nvars()) num_ = num_ + CartanPoly(r->nvars());
  } else if (ring_ != r) {
    throw InternalError("mixing elements of different coefficient rings");
  }
}

void LocRat::check_admissible() const {
  for (const auto& [key, e] : den_) {
    if (!ring_) throw InternalError("denominator without a coefficient ring");
    if (key.first < 0 || key.first >= ring_->roots().size() || e <= 0)
      throw InternalError("malformed denominator factor");
    if (key.second != 0 && !ring_->allows_shift())
      throw InternalError("shifted factor escaped into the classical ring");
  }
}

void LocRat::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    CartanPoly lin = ring_->form(it->first.first) + CartanPoly(ring_->nvars(), Rational(it->first.second));
    while (it->second > 0) {
      auto q = num_.divide_by_linear(lin);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    if (it->second == 0) {
      it = den_.erase(it);
    } else {
      ++it;
    }
  }
  check_admissible();
}

namespace {

CartanPoly factor_power_poly(const CoefficientRing& ring, const FactorKey& key, int e) {
  CartanPoly lin = ring.form(key.first) + CartanPoly(ring.nvars(), Rational(key.second));
  return lin.pow(e);
}

}  // namespace

LocRat& LocRat::operator+=(const LocRat& o) {
  adopt_ring(o.ring_);
  if (o.is_zero()) return *this;
  if (is_zero()) {
    const CoefficientRing* r = ring_;
    *this = o;
    if (!ring_) ring_ = r;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  Denominator common = den_;
  for (const auto& [k, e] : o.den_) common[k] = std::max(common[k], e);
  CartanPoly a = num_;
  CartanPoly b = o.num_;
  for (const auto& [k, e] : common) {
    auto ia = den_.find(k);
    int ea = ia == den_.end() ? 0 : ia->second;
    auto ib = o.den_.find(k);
    int eb = ib == o.den_.end() ? 0 : ib->second;
    if (e > ea) a = a * factor_power_poly(*ring_, k, e - ea);
    if (e > eb) b = b * factor_power_poly(*ring_, k, e - eb);
  }
  num_ = a + b;
  den_ = std::move(common);
  normalize();
  return *this;
}

LocRat& LocRat::operator-=(const LocRat& o) { return *this += -o; }

LocRat& LocRat::operator*=(const LocRat& o) {
  adopt_ring(o.ring_);
  if (is_zero() || o.is_zero()) {
    num_ = CartanPoly(num_.nvars());
    den_.clear();
    return *this;
  }
  num_ = num_ * o.num_;
  for (const auto& [k, e] : o.den_) den_[k] += e;
  if (!o.den_.empty() || !den_.empty()) normalize();
  return *this;
}

LocRat LocRat::operator-() const {
  LocRat r(*this);
  r.num_ = -r.num_;
  return r;
}

LocRat LocRat::inverse() const {
  if (is_zero()) throw EngineError("division by zero");
  if (num_.is_constant()) {
    LocRat r;
    r.ring_ = ring_;
    Rational c = num_.constant_term();
    CartanPoly num(num_.nvars(), Rational(1) / c);
    for (const auto& [k, e] : den_) num = num * factor_power_poly(*ring_, k, e);
    r.num_ = std::move(num);
    return r;
  }
  auto split = factor_admissible(*ring_, num_);
  if (!split) throw EngineError("division by an inadmissible polynomial: " + to_string());
  CartanPoly num(num_.nvars(), Rational(1) / split->first);
  for (const auto& [k, e] : den_) num = num * factor_power_poly(*ring_, k, e);
  return LocRat(*ring_, std::move(num), split->second);
}

LocRat LocRat::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  LocRat result = ring_ ? LocRat(*ring_, Rational(1)) : LocRat(Rational(1));
  LocRat base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Rational LocRat::eval(const std::vector<Rational>& point) const {
  Rational value = num_.eval(point);
  for (const auto& [k, e] : den_) {
    CartanPoly lin = ring_->form(k.first) + CartanPoly(ring_->nvars(), Rational(k.second));
    Rational d = lin.eval(point);
    if (sgn(d) == 0) throw EngineError("pole: factor " + ring_->factor_name(k.first, k.second) + " vanishes");
    for (int i = 0; i < e; ++i) value /= d;
  }
  return value;
}

LocRat LocRat::weight_shift(const IntVec& lambda) const {
  if (!ring_) return *this;
  if (!ring_->allows_shift()) throw InputError("weight shifts apply to the quantum ring only");
  const RootSystem& rs = ring_->roots();
  std::vector<Rational> shift(rs.rank());
  bool trivial = true;
  for (int i = 0; i < rs.rank(); ++i) {
    shift[i] = rs.pairing_simple(lambda, i);
    trivial = trivial && shift[i] == 0;
  }
  if (trivial) return *this;
  LocRat r;
  r.ring_ = ring_;
  r.num_ = num_.shifted(shift);
  for (const auto& [k, e] : den_) r.den_[{k.first, k.second + rs.pairing(lambda, k.first)}] += e;
  // Shifting is an automorphism, so the result is already reduced.
  return r;
}

LocRat LocRat::directional_derivative(const std::vector<Rational>& v) const {
  if (!ring_) return LocRat(Rational(0));
  LocRat out(*ring_, num_.directional_derivative(v), den_);
  for (const auto& [k, e] : den_) {
    Rational slope = 0;
    const IntVec& c = ring_->form_coeffs(k.first);
    for (std::size_t i = 0; i < c.size(); ++i) slope += c[i] * v[i];
    if (sgn(slope) == 0) continue;
    Denominator d = den_;
    d[k] += 1;
    out -= LocRat(*ring_, num_ * Rational(slope * e), std::move(d));
  }
  return out;
}

std::string LocRat::to_string() const {
  auto name = [this](int i) {
    if (!ring_) return std::string("x") + std::to_string(i);
    return ring_->var_name(i);
  };
  std::string num = num_.to_string(name);
  if (den_.empty()) return num;
  bool compound = num_.terms().size() > 1;
  std::ostringstream os;
  if (compound) os << '(';
  os << num;
  if (compound) os << ')';
  os << '/';
  bool multi = den_.size() > 1 || den_.begin()->second > 1;
  if (multi) os << '(';
  bool first = true;
  for (const auto& [k, e] : den_) {
    if (!first) os << '*';
    first = false;
    os << ring_->factor_name(k.first, k.second);
    if (e > 1) os << '^' << e;
  }
  if (multi) os << ')';
  return os.str();
}

bool LocRat::needs_parens() const {
  if (!den_.empty()) return true;
  if (num_.terms().size() > 1) return true;
  return false;
}

// ---------------------------------------------------------------------------

std::optional<std::pair<Rational, Denominator>> factor_admissible(const CoefficientRing& ring,
                                                                  const CartanPoly& num) {
  if (num.is_zero()) return std::nullopt;
  CartanPoly p = num;
  Denominator factors;
  const int nroots = ring.roots().size();
  static const long kLine[kMaxCartanVars] = {2, 3, 5, 7, 11, 13, 17, 19};
  constexpr long kMaxCandidates = 200000;
  while (p.degree() > 0) {
    bool found = false;
    for (int a = 0; a < nroots && !found; ++a) {
      if (!ring.allows_shift()) {
        if (auto q = p.divide_by_linear(ring.form(a))) {
          p = std::move(*q);
          factors[{a, 0}] += 1;
          found = true;
        }
        continue;
      }
      // Along the line x = c t, h_alpha + m divides p only if t0 = -m/s is a
      // root of u(t) = p(c t), s = h_alpha(c) > 0. Cauchy bound limits |m|.
      const IntVec& b = ring.form_coeffs(a);
      long s = 0;
      for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * kLine[i];
      const int d = p.degree();
      std::vector<Rational> u(d + 1, Rational(0));
      for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (int i = 0; i < ring.nvars(); ++i)
          for (int e = 0; e < m.exp[i]; ++e) t *= kLine[i];
        u[m.degree()] += t;
      }
      if (sgn(u[d]) == 0) continue;
      Rational bound = 0;
      for (int k = 0; k < d; ++k) bound = std::max(bound, Rational(abs(u[k] / u[d])));
      bound = (bound + 1) * s;
      Integer mmax = bound.get_num() / bound.get_den() + 1;
      if (mmax > kMaxCandidates) throw EngineError("coefficient too large to factor into admissible factors");
      const long limit = mmax.get_si();
      for (long m = -limit; m <= limit && !found; ++m) {
        Rational t0(-m, s);
        t0.canonicalize();
        Rational val = 0;
        for (int k = d; k >= 0; --k) val = val * t0 + u[k];
        if (sgn(val) != 0) continue;
        CartanPoly lin = ring.form(a) + CartanPoly(ring.nvars(), Rational(m));
        if (auto q = p.divide_by_linear(lin)) {
          p = std::move(*q);
          factors[{a, m}] += 1;
          found = true;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return std::make_pair(p.constant_term(), factors);
}

}  // namespace lie
