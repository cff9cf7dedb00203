#pragma once

// Functions on g, b and b^w with coefficients in C[h]', the Hamiltonian
// action of n on them, classical projectors and classical Zhelobenko
// operators.
//
// Coordinates: E[g] is the function y -> coefficient of e_{-g} in y; the
// Cartan variables H[e_i] = alpha_i(h) live in the coefficient ring.

#include "lie/chevalley.hpp"
#include "lie/coeffs.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lie {

/// Polynomial in the coordinate symbols E[gamma] with LocRat coefficients.
/// Symbol s stands for E[weight(s)] of a ChevalleyBasis, so the negative
/// root symbols are the coordinates on b.
class PolyFunc {
 public:
  /// Sorted (symbol, exponent) pairs.
  using Mono = std::vector<std::pair<int, int>>;
  using Terms = std::map<Mono, LocRat>;

  PolyFunc() = default;
  PolyFunc(long c) : PolyFunc(LocRat(c)) {}             // NOLINT(google-explicit-constructor)
  PolyFunc(const Rational& c) : PolyFunc(LocRat(c)) {}  // NOLINT(google-explicit-constructor)
  PolyFunc(const LocRat& c);                            // NOLINT(google-explicit-constructor)

  static PolyFunc symbol(int s, int power = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest total symbol degree of a term (-1 for zero).
  int degree() const;
  /// Coefficient of the empty monomial.
  LocRat constant_part() const;
  bool uses_symbol(int s) const;

  void add_term(const Mono& m, const LocRat& c);
  PolyFunc& operator+=(const PolyFunc& o);
  PolyFunc& operator-=(const PolyFunc& o);
  PolyFunc operator+(const PolyFunc& o) const { return PolyFunc(*this) += o; }
  PolyFunc operator-(const PolyFunc& o) const { return PolyFunc(*this) -= o; }
  PolyFunc operator-() const;
  PolyFunc operator*(const PolyFunc& o) const;
  PolyFunc operator*(const LocRat& c) const;
  PolyFunc operator*(const Rational& c) const { return *this * LocRat(c); }
  PolyFunc pow(int n) const;
  bool operator==(const PolyFunc& o) const { return terms_ == o.terms_; }

  /// Keeps the terms whose symbols all satisfy `keep`.
  PolyFunc filtered(const std::function<bool(int)>& keep) const;
  /// Replaces symbols by functions; symbols absent from the map stay.
  PolyFunc substitute(const std::map<int, PolyFunc>& values) const;

 private:
  Terms terms_;
};

inline bool coeff_is_zero(const PolyFunc& f) { return f.is_zero(); }

/// Which coordinate symbols a function may use.
struct Carrier {
  enum class Kind { kG, kB, kBw };
  Kind kind = Kind::kG;
  std::vector<bool> allowed;  // indexed by root symbol

  bool contains(const PolyFunc& f) const;
  std::string name() const;
};

enum class SeriesMode {
  /// Reduce mod I after every bracket; terminates on all of C[b^w]'.
  kTruncated,
  /// Plain iterated brackets on the representative, bounded by max_depth.
  kLiteral,
};

/// Root system, Chevalley basis and classical coefficient ring bundled
/// together; all classical operations go through one context.
class ClassicalContext {
 public:
  explicit ClassicalContext(const RootSystem& rs, ChevalleyBasis::Options options = {});
  ClassicalContext(const ClassicalContext&) = delete;
  ClassicalContext& operator=(const ClassicalContext&) = delete;

  const RootSystem& roots() const { return *rs_; }
  const ChevalleyBasis& lie() const { return *g_; }
  const CoefficientRing& ring() const { return *ring_; }

  Carrier carrier_g() const;
  Carrier carrier_b() const;
  /// Coordinates E[-gamma], gamma in w Delta_+.
  Carrier carrier_bw(const WeylElement& w) const;

  /// E[gamma] for a signed root gamma.
  PolyFunc e_hat(const IntVec& gamma) const;
  /// C_alpha = E[-alpha], the coordinate of e_alpha on b.
  PolyFunc c_coord(int alpha) const { return PolyFunc::symbol(g_->negative(alpha)); }
  /// H[v] = v(h) for a root-lattice vector v.
  PolyFunc h_hat(const IntVec& v) const;
  PolyFunc h_hat_root(int alpha) const { return h_hat(rs_->root(alpha)); }

  /// {E[alpha], f} on C[g]'.
  PolyFunc poisson_e(int alpha, const PolyFunc& f) const;
  /// Sets every E[alpha], alpha > 0, to zero.
  PolyFunc reduce_mod_I(const PolyFunc& f) const;
  /// Action of e_alpha on C[b]': bracket, then reduce mod I.
  PolyFunc e_action(int alpha, const PolyFunc& f) const;

  /// P_alpha f = sum (-1)^n/n! H_alpha^{-n} C_alpha^n e_alpha^n f.
  PolyFunc p_alpha(int alpha, const PolyFunc& f) const;
  /// P = P_{beta_N} ... P_{beta_1} (P_{beta_1} applied first).
  PolyFunc project(const PolyFunc& f, const NormalOrdering& ordering) const;
  /// P_{>=k} = P_{beta_N} ... P_{beta_k}, k 1-based in [1, N+1].
  PolyFunc project_partial(const PolyFunc& f, const NormalOrdering& ordering, int k) const;

  /// The reduction of the generic point of b' over beta_N..beta_k.
  struct SymbolicReduction {
    std::vector<ReductionStep<PolyFunc>> steps;  // beta_N first
    LieVector<PolyFunc> reduced;
    /// E[-beta_j] -> reduced coordinate of e_{beta_j}, j < k.
    std::map<int, PolyFunc> coordinates;
  };
  LieVector<PolyFunc> generic_point() const;
  SymbolicReduction symbolic_partial_decompose(const NormalOrdering& ordering, int k) const;

  /// Q_w f = f at the partially reduced point; f on carrier b^w for the
  /// element w = s_{beta_k} ... s_{beta_N}.
  PolyFunc zhelobenko_classical(const NormalOrdering& ordering, int k, const PolyFunc& f) const;
  PolyFunc zhelobenko_classical(const WeylElement& w, const PolyFunc& f) const;

  /// Q_alpha f~ = sum (-1)^n/n! H_alpha^{-n} C_alpha^n {E[alpha], f~}^n.
  PolyFunc zhelobenko_series_alpha(int alpha, const PolyFunc& f, SeriesMode mode, int max_depth) const;
  /// Q_{beta_k} first, ..., Q_{beta_N} last, then reduced mod I.
  PolyFunc zhelobenko_classical_series(const NormalOrdering& ordering, int k, const PolyFunc& f,
                                       SeriesMode mode = SeriesMode::kTruncated, int max_depth = 64) const;

  /// Value at a point of g: E[gamma] reads the coefficient of e_{-gamma},
  /// H[e_i] reads alpha_i(h).
  Rational eval(const PolyFunc& f, const LieElement& y) const;

  std::string to_string(const PolyFunc& f) const;

 private:
  const RootSystem* rs_;
  std::unique_ptr<ChevalleyBasis> g_;
  std::unique_ptr<CoefficientRing> ring_;
  // derivative_[alpha][s] = {E[alpha], E[weight(s)]}
  std::vector<std::vector<PolyFunc>> derivative_;
  // cartan_direction_[alpha][i] = alpha_i(h_alpha)
  std::vector<std::vector<Rational>> cartan_direction_;
};

}  // namespace lie
