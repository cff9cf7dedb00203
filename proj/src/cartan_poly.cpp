#include "lie/cartan_poly.hpp"

#include <algorithm>
#include <sstream>

namespace lie {

void CartanPoly::check_nvars() const {
  if (nvars_ < 0 || nvars_ > kMaxCartanVars)
    throw InputError("coefficient rings support rank <= " + std::to_string(kMaxCartanVars));
}

CartanPoly::CartanPoly(int nvars, const Rational& c) : nvars_(nvars) {
  check_nvars();
  if (sgn(c) != 0) terms_.emplace(CartanMonomial{}, c);
}

CartanPoly CartanPoly::variable(int nvars, int i) {
  CartanPoly p(nvars);
  CartanMonomial m;
  m.exp[i] = 1;
  p.terms_.emplace(m, Rational(1));
  return p;
}

CartanPoly CartanPoly::linear(const std::vector<Rational>& coeffs, const Rational& constant) {
  CartanPoly p(static_cast<int>(coeffs.size()), constant);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    CartanMonomial m;
    m.exp[i] = 1;
    p.terms_.emplace(m, coeffs[i]);
  }
  return p;
}

CartanPoly CartanPoly::linear(const IntVec& coeffs, long constant) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return linear(c, Rational(constant));
}

bool CartanPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational CartanPoly::constant_term() const {
  auto it = terms_.find(CartanMonomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int CartanPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return terms_.empty() ? -1 : d;
}

int CartanPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.exp[var]);
  return d;
}

void CartanPoly::add_term(const CartanMonomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

CartanPoly& CartanPoly::operator+=(const CartanPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CartanPoly& CartanPoly::operator-=(const CartanPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CartanPoly& CartanPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CartanPoly CartanPoly::operator-() const {
  CartanPoly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

CartanPoly CartanPoly::operator*(const CartanPoly& o) const {
  CartanPoly r(std::max(nvars_, o.nvars_));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

CartanPoly CartanPoly::pow(int n) const {
  if (n < 0) throw InputError("negative polynomial power");
  CartanPoly result(nvars_, Rational(1));
  CartanPoly base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Rational CartanPoly::eval(const std::vector<Rational>& point) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int e = 0; e < m.exp[i]; ++e) t *= point.at(i);
    }
    s += t;
  }
  return s;
}

CartanPoly CartanPoly::shifted(const std::vector<Rational>& shift) const {
  bool trivial = true;
  for (const auto& s : shift) trivial = trivial && sgn(s) == 0;
  if (trivial) return *this;
  // Expand variable by variable: each pass substitutes x_i -> x_i + s_i.
  CartanPoly cur = *this;
  for (int i = 0; i < nvars_; ++i) {
    if (i >= static_cast<int>(shift.size()) || sgn(shift[i]) == 0) continue;
    CartanPoly next(nvars_);
    for (const auto& [m, c] : cur.terms_) {
      const int e = m.exp[i];
      // (x_i + s)^e = sum_j C(e,j) x_i^j s^{e-j}
      Integer binom = 1;
      Rational spow = 1;
      std::vector<Rational> powers(e + 1);
      for (int j = 0; j <= e; ++j) {
        powers[j] = spow;
        spow *= shift[i];
      }
      for (int j = e; j >= 0; --j) {
        CartanMonomial mm = m;
        mm.exp[i] = static_cast<std::uint16_t>(j);
        next.add_term(mm, c * Rational(binom) * powers[e - j]);
        // C(e, j-1) = C(e, j) * j / (e - j + 1)
        binom = binom * j / (e - j + 1);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

CartanPoly CartanPoly::directional_derivative(const std::vector<Rational>& v) const {
  CartanPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) {
      if (m.exp[i] == 0 || i >= static_cast<int>(v.size()) || sgn(v[i]) == 0) continue;
      CartanMonomial mm = m;
      mm.exp[i] -= 1;
      r.add_term(mm, c * v[i] * m.exp[i]);
    }
  }
  return r;
}

std::optional<CartanPoly> CartanPoly::divide_by_linear(const CartanPoly& lin) const {
  if (lin.degree() != 1) throw InternalError("divide_by_linear expects a degree-one polynomial");
  if (terms_.empty()) return CartanPoly(nvars_);
  // Pivot on the first variable present in the linear form: lin = a x_j + rest.
  int pivot = -1;
  Rational a;
  for (const auto& [m, c] : lin.terms_) {
    if (m.degree() != 1) continue;
    for (int i = 0; i < kMaxCartanVars; ++i) {
      if (m.exp[i] == 1 && (pivot == -1 || i < pivot)) {
        pivot = i;
        a = c;
      }
    }
  }
  CartanPoly rest = lin;
  {
    CartanMonomial m;
    m.exp[pivot] = 1;
    rest.terms_.erase(m);
  }
  // Group by power of the pivot: self = sum_k c_k(x') x_j^k.
  const int deg = degree_in(pivot);
  std::vector<CartanPoly> coeff(deg + 1, CartanPoly(nvars_));
  for (const auto& [m, c] : terms_) {
    CartanMonomial mm = m;
    int k = mm.exp[pivot];
    mm.exp[pivot] = 0;
    coeff[k].add_term(mm, c);
  }
  // Synthetic division by (a x_j + rest) from the top power down.
  std::vector<CartanPoly> quot(std::max(deg, 1), CartanPoly(nvars_));
  for (int k = deg; k >= 1; --k) {
    CartanPoly q = coeff[k] * (Rational(1) / a);
    coeff[k - 1] -= q * rest;
    quot[k - 1] = std::move(q);
  }
  if (!coeff[0].is_zero()) return std::nullopt;
  CartanPoly out(nvars_);
  for (int k = 0; k < deg; ++k) {
    for (const auto& [m, c] : quot[k].terms_) {
      CartanMonomial mm = m;
      mm.exp[pivot] = static_cast<std::uint16_t>(mm.exp[pivot] + k);
      out.add_term(mm, c);
    }
  }
  return out;
}

std::string CartanPoly::to_string(const std::function<std::string(int)>& var_name) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<CartanMonomial, Rational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    int dx = x.first.degree(), dy = y.first.degree();
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : items) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.degree() == 0 || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m.exp[i] == 0) continue;
      if (need_star) os << '*';
      os << var_name(i);
      if (m.exp[i] > 1) os << '^' << m.exp[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace lie
