#pragma once

// PBW engine for U(g)' = U(g) (x)_{U(h)} D(h), the universal Verma module
// V = U(g)'/U(g)'n and its twists V_w, extremal projectors and quantum
// Zhelobenko operators.
//
// Storage: a term is phi(h) * M with the D(h) coefficient at the far left
// and M an ordered monomial in the root generators of a PbwBasis. Text
// output moves the coefficient between the two blocks of the basis.

#include "lie/chevalley.hpp"
#include "lie/coeffs.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace lie {

/// Ordered list of all 2N root generators: a complement block followed by an
/// ideal block. V uses (e_{-beta_1}..e_{-beta_N} | e_{beta_1}..e_{beta_N});
/// V_w uses (e_{-beta_j}, j<k, e_{beta_j}, j>=k | e_{beta_j}, j<k, e_{-beta_j}, j>=k).
class PbwBasis {
 public:
  using Mono = std::vector<int>;  // exponent per position
  using Expansion = std::vector<std::pair<CartanPoly, Mono>>;

  static std::shared_ptr<PbwBasis> verma(const ChevalleyBasis& g, const NormalOrdering& ordering);
  static std::shared_ptr<PbwBasis> twisted(const ChevalleyBasis& g, const NormalOrdering& ordering, int k);

  const ChevalleyBasis& lie() const { return *g_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  int symbol_at(int pos) const { return symbols_.at(pos); }
  int position(int symbol) const { return positions_.at(symbol); }
  int ideal_start() const { return ideal_start_; }
  bool is_ideal_position(int pos) const { return pos >= ideal_start_; }
  /// True when two bases share the ideal block as a set (same quotient).
  bool same_quotient(const PbwBasis& o) const;

  IntVec weight(const Mono& m) const;
  bool in_ideal(const Mono& m) const;

  /// generator(pos) * x^m as sum of c(h) * x^{m'} (coefficient on the left).
  const Expansion& leftmul(int pos, const Mono& m) const;

 private:
  PbwBasis(const ChevalleyBasis& g, std::vector<int> symbols, int ideal_start);
  const Expansion& leftmul_locked(int pos, const Mono& m) const;

  const ChevalleyBasis* g_;
  std::vector<int> symbols_;
  std::vector<int> positions_;
  int ideal_start_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<int, Mono>, Expansion> memo_;
};

/// Element of U(g)' in PBW form over a basis, or a representative of V / V_w.
class UElement {
 public:
  using Mono = PbwBasis::Mono;
  using Terms = std::map<Mono, LocRat>;

  UElement() = default;
  explicit UElement(std::shared_ptr<const PbwBasis> basis) : basis_(std::move(basis)) {}

  const std::shared_ptr<const PbwBasis>& basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Mono& m, const LocRat& c);
  UElement& operator+=(const UElement& o);
  UElement& operator-=(const UElement& o);
  UElement operator+(const UElement& o) const { return UElement(*this) += o; }
  UElement operator-(const UElement& o) const { return UElement(*this) -= o; }
  UElement operator-() const;
  /// Left multiplication by a scalar of D(h).
  UElement scaled(const LocRat& c) const;
  bool operator==(const UElement& o) const { return terms_ == o.terms_; }

  /// Total degree in the root generators, -1 for zero.
  int degree() const;
  /// Component with empty monomial (the D(h) part).
  LocRat scalar_part() const;
  /// True when every coefficient is a polynomial.
  bool has_polynomial_coefficients() const;

 private:
  std::shared_ptr<const PbwBasis> basis_;
  Terms terms_;
};

class QuantumContext {
 public:
  explicit QuantumContext(const RootSystem& rs, ChevalleyBasis::Options options = {});
  /// Uses `ordering` for the PBW order of V.
  QuantumContext(const RootSystem& rs, const NormalOrdering& ordering, ChevalleyBasis::Options options = {});
  QuantumContext(const QuantumContext&) = delete;
  QuantumContext& operator=(const QuantumContext&) = delete;

  const RootSystem& roots() const { return *rs_; }
  const ChevalleyBasis& lie() const { return *g_; }
  const CoefficientRing& ring() const { return *ring_; }
  const std::shared_ptr<PbwBasis>& verma_basis() const { return verma_; }
  /// PBW basis of V_w for w = s_{beta_k}...s_{beta_N}; cached.
  std::shared_ptr<PbwBasis> twisted_basis(const NormalOrdering& ordering, int k) const;

  // --- construction ---------------------------------------------------------
  UElement scalar(const std::shared_ptr<const PbwBasis>& basis, const LocRat& c) const;
  UElement one(const std::shared_ptr<const PbwBasis>& basis) const { return scalar(basis, LocRat(1L)); }
  /// A root generator e_gamma (by ChevalleyBasis symbol).
  UElement generator(const std::shared_ptr<const PbwBasis>& basis, int symbol) const;
  /// Embedding of a Lie element (Cartan part becomes a D(h) coefficient).
  UElement from_lie(const std::shared_ptr<const PbwBasis>& basis, const LieElement& x) const;
  /// h_v as a D(h) element: coroot for roots, sum v_i h_i otherwise.
  LocRat h_named(const IntVec& v, long shift = 0) const;
  /// The highest weight vector v0 of V.
  UElement v0() const { return one(verma_); }

  // --- algebra --------------------------------------------------------------
  /// generator * u.
  UElement apply_generator(int symbol, const UElement& u) const;
  UElement multiply(const UElement& a, const UElement& b) const;
  /// u * phi: the scalar passes to the left through each monomial.
  UElement right_scalar(const UElement& u, const LocRat& phi) const;
  /// Same element expressed over another basis (no quotient taken).
  UElement rebase(const UElement& u, const std::shared_ptr<const PbwBasis>& target) const;
  /// Drops every term ending in the ideal block: the image in V or V_w.
  UElement quotient(const UElement& u) const;

  // --- modules --------------------------------------------------------------
  /// x acting on a vector of V or V_w (the vector's basis decides which).
  UElement act(const LieElement& x, const UElement& v) const;
  UElement act_generator(int symbol, const UElement& v) const;
  /// p_alpha(t) = sum (-1)^n/n! f_{alpha,n}(t)^{-1} e_{-alpha}^n e_alpha^n; t an integer.
  UElement p_alpha_t(int alpha, const Rational& t, const UElement& v) const;
  /// p = p_{beta_N}(rho(h_{beta_N})) ... p_{beta_1}(rho(h_{beta_1})), p_{beta_1} first.
  UElement extremal_projector(const UElement& v, const NormalOrdering& ordering) const;

  /// ad e_alpha (u) = e_alpha u - u e_alpha.
  UElement ad_e(int alpha, const UElement& u) const;
  /// q'_alpha(u) = sum (-1)^n/n! (ad e_alpha)^n(u) e_{-alpha}^n g_{alpha,n}^{-1}.
  UElement zhelobenko_q_alpha(int alpha, const UElement& u, int max_depth = 64) const;
  /// q_w on a representative of a vector of V_w (any basis); returns a
  /// vector of V. Applies q'_{beta_k} first and q'_{beta_N} last.
  UElement zhelobenko_qw(const NormalOrdering& ordering, int k, const UElement& x, int max_depth = 64) const;

  // --- text -----------------------------------------------------------------
  /// "F[1,1]^2 * (h[1,0]+1)/(h[1,0]+2) * E[1,0]"; vectors get a trailing "v0".
  std::string to_string(const UElement& u, bool as_vector) const;

 private:
  void init(const NormalOrdering& ordering);
  UElement shifted_apply(int pos, const UElement& u) const;

  const RootSystem* rs_;
  std::unique_ptr<ChevalleyBasis> g_;
  std::unique_ptr<CoefficientRing> ring_;
  std::shared_ptr<PbwBasis> verma_;
  mutable std::mutex twisted_mutex_;
  mutable std::map<std::pair<std::vector<int>, int>, std::shared_ptr<PbwBasis>> twisted_;
};

}  // namespace lie
