#pragma once

#include "lie/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lie {

inline constexpr int kMaxCartanVars = 8;

/// Exponent vector of a monomial in the Cartan variables.
struct CartanMonomial {
  std::array<std::uint16_t, kMaxCartanVars> exp{};

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  CartanMonomial operator*(const CartanMonomial& o) const {
    CartanMonomial r;
    for (int i = 0; i < kMaxCartanVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
    return r;
  }
  auto operator<=>(const CartanMonomial&) const = default;
};

/// Sparse polynomial in the variables x_0..x_{n-1} with rational coefficients.
/// Canonical: no zero coefficients, keys sorted by std::map.
class CartanPoly {
 public:
  using Terms = std::map<CartanMonomial, Rational>;

  CartanPoly() = default;
  explicit CartanPoly(int nvars) : nvars_(nvars) { check_nvars(); }
  CartanPoly(int nvars, const Rational& c);

  static CartanPoly variable(int nvars, int i);
  /// sum coeffs[i] x_i + constant.
  static CartanPoly linear(const std::vector<Rational>& coeffs, const Rational& constant);
  static CartanPoly linear(const IntVec& coeffs, long constant);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  int degree() const;
  int degree_in(int var) const;

  CartanPoly& operator+=(const CartanPoly& o);
  CartanPoly& operator-=(const CartanPoly& o);
  CartanPoly& operator*=(const Rational& c);
  CartanPoly operator+(const CartanPoly& o) const { return CartanPoly(*this) += o; }
  CartanPoly operator-(const CartanPoly& o) const { return CartanPoly(*this) -= o; }
  CartanPoly operator-() const;
  CartanPoly operator*(const CartanPoly& o) const;
  CartanPoly operator*(const Rational& c) const { return CartanPoly(*this) *= c; }
  CartanPoly pow(int n) const;
  bool operator==(const CartanPoly& o) const { return terms_ == o.terms_; }

  void add_term(const CartanMonomial& m, const Rational& c);

  Rational eval(const std::vector<Rational>& point) const;
  /// p(x + shift).
  CartanPoly shifted(const std::vector<Rational>& shift) const;
  /// d/dt p(x + t v) at t = 0.
  CartanPoly directional_derivative(const std::vector<Rational>& v) const;
  /// Exact quotient by a linear polynomial, or nullopt if it does not divide.
  std::optional<CartanPoly> divide_by_linear(const CartanPoly& linear) const;

  /// Printing with a caller-supplied variable name; terms by descending degree.
  std::string to_string(const std::function<std::string(int)>& var_name) const;

 private:
  void check_nvars() const;

  int nvars_ = 0;
  Terms terms_;
};

}  // namespace lie
