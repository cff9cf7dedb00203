#pragma once

// Localized coefficient rings over the Cartan subalgebra.
//
// Classical C[h]': rational functions in x_i = alpha_i(h) whose denominators
// are products of the linear forms alpha(h), alpha > 0.
// Quantum D(h): rational functions in the simple coroots h_i whose
// denominators are products of h_alpha + m, alpha > 0, m an integer.
//
// Both are LocRat over a CoefficientRing; the ring decides which factors are
// admissible and how variables are named.

#include "lie/cartan_poly.hpp"
#include "lie/roots.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lie {

enum class RingKind { kClassical, kQuantum };

class CoefficientRing {
 public:
  CoefficientRing(const RootSystem& rs, RingKind kind);

  RingKind kind() const { return kind_; }
  const RootSystem& roots() const { return *rs_; }
  int nvars() const { return rs_->rank(); }
  /// Homogeneous linear form of the factor attached to a positive root:
  /// alpha(h) in the classical ring, h_alpha in the quantum ring.
  const CartanPoly& form(int root) const { return forms_.at(root); }
  /// Coefficients of form(root) on the ring variables.
  const IntVec& form_coeffs(int root) const { return form_coeffs_.at(root); }
  bool allows_shift() const { return kind_ == RingKind::kQuantum; }

  /// Name of the i-th ring variable: "H[1,0]" (classical) or "h[1,0]" (quantum).
  std::string var_name(int i) const;
  std::string factor_name(int root, long shift) const;

  /// Coefficient vector of the linear form named by a root-lattice vector
  /// v: the classical form v(h), or the quantum h_v (coroot when v is a root,
  /// sum v_i h_i otherwise).
  std::vector<Rational> named_form(const IntVec& v) const;

 private:
  const RootSystem* rs_;
  RingKind kind_;
  std::vector<CartanPoly> forms_;
  std::vector<IntVec> form_coeffs_;
};

/// Denominator key: (positive root index, integer shift m).
using FactorKey = std::pair<int, long>;
using Denominator = std::map<FactorKey, int>;

/// Element of C[h]' or D(h). A null ring means a pure rational constant; it
/// adopts the ring of whatever it is combined with. The ring must outlive
/// every element that refers to it.
class LocRat {
 public:
  LocRat() = default;
  LocRat(const Rational& c);  // NOLINT(google-explicit-constructor)
  LocRat(long c) : LocRat(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  LocRat(const CoefficientRing& ring, const Rational& c);
  LocRat(const CoefficientRing& ring, CartanPoly num, Denominator den = {});

  static LocRat variable(const CoefficientRing& ring, int i);
  /// The admissible linear factor form(root) + shift as a ring element.
  static LocRat factor(const CoefficientRing& ring, int root, long shift = 0);
  /// (form(root) + shift)^{-power}.
  static LocRat inverse_factor(const CoefficientRing& ring, int root, long shift = 0, int power = 1);
  /// Linear form from a root-lattice vector (see CoefficientRing::named_form).
  static LocRat named(const CoefficientRing& ring, const IntVec& v, const Rational& shift = 0);

  const CoefficientRing* ring() const { return ring_; }
  const CartanPoly& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  /// Value when is_constant().
  Rational constant_value() const { return num_.constant_term(); }

  LocRat& operator+=(const LocRat& o);
  LocRat& operator-=(const LocRat& o);
  LocRat& operator*=(const LocRat& o);
  LocRat operator+(const LocRat& o) const { return LocRat(*this) += o; }
  LocRat operator-(const LocRat& o) const { return LocRat(*this) -= o; }
  LocRat operator*(const LocRat& o) const { return LocRat(*this) *= o; }
  LocRat operator-() const;
  /// Division by an element whose numerator is a constant times a product of
  /// admissible factors. Throws EngineError for zero or inadmissible divisors.
  LocRat operator/(const LocRat& o) const { return *this * o.inverse(); }
  LocRat inverse() const;
  LocRat pow(int n) const;

  bool operator==(const LocRat& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Exact value at a point (values of the ring variables). Throws
  /// EngineError naming the vanishing factor at a pole.
  Rational eval(const std::vector<Rational>& point) const;

  /// Substitution h -> h + lambda(h) for lambda in the root lattice (quantum
  /// ring only): h_i -> h_i + lambda(h_i), h_alpha + m -> h_alpha + m + lambda(h_alpha).
  LocRat weight_shift(const IntVec& lambda) const;

  /// d/dt f(x + t v) at t = 0; v indexed by ring variables.
  LocRat directional_derivative(const std::vector<Rational>& v) const;

  std::string to_string() const;
  /// True when printing inside a product needs parentheses.
  bool needs_parens() const;

 private:
  void normalize();
  void adopt_ring(const CoefficientRing* r);
  void check_admissible() const;

  const CoefficientRing* ring_ = nullptr;
  CartanPoly num_;
  Denominator den_;
};

/// Writes num as c * prod (form + shift)^e over admissible factors, or
/// nullopt when it does not split that way.
std::optional<std::pair<Rational, Denominator>> factor_admissible(const CoefficientRing& ring,
                                                                  const CartanPoly& num);

}  // namespace lie
