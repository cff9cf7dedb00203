#pragma once

// Chevalley basis of a semisimple Lie algebra with exact structure constants,
// Lie elements over an arbitrary coefficient ring, nilpotent adjoint
// exponentials, and the decomposition y = Ad(n) h of regular Borel elements.

#include "lie/roots.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lie {

/// Basis symbols: 0..N-1 are e_beta (positive roots by index), N..2N-1 are
/// e_{-beta}, 2N..2N+rank-1 are the simple coroots h_i.
class ChevalleyBasis {
 public:
  struct Options {
    /// Negate the structure constants of all extraspecial pairs.
    bool flip_extraspecial = false;
    /// Exhaustive Jacobi and |N| = p+1 checks at construction (rank <= 3 by default).
    int verify_up_to_rank = 3;
  };

  explicit ChevalleyBasis(const RootSystem& rs) : ChevalleyBasis(rs, Options{}) {}
  ChevalleyBasis(const RootSystem& rs, Options options);

  const RootSystem& roots() const { return *rs_; }
  int num_roots() const { return n_; }
  int dim() const { return 2 * n_ + rs_->rank(); }

  int positive(int root) const { return root; }
  int negative(int root) const { return n_ + root; }
  int cartan(int i) const { return 2 * n_ + i; }
  bool is_root_symbol(int s) const { return s < 2 * n_; }
  bool is_positive_symbol(int s) const { return s < n_; }
  bool is_negative_symbol(int s) const { return s >= n_ && s < 2 * n_; }
  bool is_cartan_symbol(int s) const { return s >= 2 * n_; }
  /// Positive-root index underlying a root symbol.
  int root_of(int s) const { return s < n_ ? s : s - n_; }
  /// Weight of a root symbol in simple-root coordinates (zero for Cartan).
  const IntVec& weight(int s) const { return weights_.at(s); }
  /// Root symbol for a signed root vector, or -1.
  int symbol_for(const IntVec& v) const;

  /// N_{a,b} for root symbols with a+b a root; 0 when a+b is not a root.
  int structure_constant(int a, int b) const;
  /// [x_a, x_b] as a sparse list of (symbol, integer coefficient).
  const std::vector<std::pair<int, int>>& bracket(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * dim() + b];
  }

  /// Symbol-level name: "e[1,0]", "e[-1,-1]", "h[0,1]".
  std::string symbol_name(int s) const;

  /// Coroot coordinates a with x_i = alpha_i(h) for h = sum a_j h_j.
  std::vector<Rational> cartan_from_root_values(const std::vector<Rational>& x) const;

 private:
  int compute_positive(int r, int s);
  int signed_constant(int a, int b);
  int string_p(int r, int s) const;
  void verify() const;

  const RootSystem* rs_;
  int n_;
  Options options_;
  std::vector<IntVec> weights_;
  std::map<IntVec, int> symbol_of_;
  std::vector<std::pair<int, int>> extraspecial_;  // per positive root; (-1,-1) for simple
  std::map<std::pair<int, int>, int> positive_memo_;
  std::vector<int> constants_;  // dense [a][b] over root symbols
  std::vector<std::vector<std::pair<int, int>>> table_;
};

// ---------------------------------------------------------------------------

inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }

/// Element of g with coefficients in a commutative ring C (Rational for
/// numeric points, symbolic functions for the generic point).
template <class C>
class LieVector {
 public:
  using Terms = std::map<int, C>;

  LieVector() = default;
  static LieVector basis(int symbol, C c) {
    LieVector v;
    v.add(symbol, std::move(c));
    return v;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  C coeff(int symbol) const {
    auto it = terms_.find(symbol);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add(int symbol, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(symbol, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  LieVector& operator+=(const LieVector& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  LieVector& operator-=(const LieVector& o) {
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
  }
  LieVector operator+(const LieVector& o) const { return LieVector(*this) += o; }
  LieVector operator-(const LieVector& o) const { return LieVector(*this) -= o; }
  LieVector operator-() const {
    LieVector r;
    for (const auto& [s, c] : terms_) r.terms_.emplace(s, -c);
    return r;
  }
  template <class S>
  LieVector scaled(const S& k) const {
    LieVector r;
    for (const auto& [s, c] : terms_) r.add(s, c * k);
    return r;
  }
  bool operator==(const LieVector& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

using LieElement = LieVector<Rational>;

template <class C>
LieVector<C> bracket(const ChevalleyBasis& g, const LieVector<C>& x, const LieVector<C>& y) {
  LieVector<C> r;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      const auto& br = g.bracket(a, b);
      if (br.empty()) continue;
      C prod = ca * cb;
      for (const auto& [s, k] : br) r.add(s, prod * C(k));
    }
  }
  return r;
}

/// True when x is supported on root vectors of a single sign.
template <class C>
bool is_one_signed_nilpotent(const ChevalleyBasis& g, const LieVector<C>& x) {
  bool pos = false, neg = false;
  for (const auto& [s, c] : x.terms()) {
    if (g.is_cartan_symbol(s)) return false;
    (g.is_positive_symbol(s) ? pos : neg) = true;
  }
  return !(pos && neg);
}

/// exp(ad x)(y) = sum_n (ad x)^n (y) / n! for x in n or in the opposite
/// nilradical. Throws InputError for any other x.
template <class C>
LieVector<C> ad_exp(const ChevalleyBasis& g, const LieVector<C>& x, const LieVector<C>& y) {
  if (!is_one_signed_nilpotent(g, x)) throw InputError("ad_exp: x must lie in n or in the opposite nilradical");
  LieVector<C> result = y;
  LieVector<C> term = y;
  // (ad x)^n vanishes once n exceeds the number of root heights spanned.
  const int bound = 2 * g.num_roots() + 2;
  for (int n = 1; n <= bound; ++n) {
    term = bracket(g, x, term).scaled(Rational(1, n));
    if (term.is_zero()) return result;
    result += term;
  }
  throw InternalError("ad_exp: adjoint action failed to terminate");
}

/// One step of the reduction: the root processed and its exponent t.
template <class C>
struct ReductionStep {
  int root;
  C t;
};

template <class C>
struct PartialReduction {
  /// Steps in processing order beta_N, beta_{N-1}, ..., beta_k.
  std::vector<ReductionStep<C>> steps;
  /// Ad e^{t_k e_{beta_k}} ... Ad e^{t_N e_{beta_N}} y.
  LieVector<C> reduced;
};

/// Runs the reduction over beta_N..beta_k (k 1-based). `over_root(c, beta)`
/// must return c / beta(h) for the Cartan part h of y.
template <class C>
PartialReduction<C> reduce_borel(const ChevalleyBasis& g, const LieVector<C>& y, const NormalOrdering& ordering,
                                 int k, const std::function<C(const C&, int)>& over_root) {
  const int count = g.num_roots();
  if (k < 1 || k > count + 1)
    throw InputError("suffix index k=" + std::to_string(k) + " outside [1, " + std::to_string(count + 1) + "]");
  for (const auto& [s, c] : y.terms()) {
    if (g.is_negative_symbol(s)) throw InputError("element is not in the Borel subalgebra: " + g.symbol_name(s));
  }
  PartialReduction<C> out;
  out.reduced = y;
  for (int pos = count - 1; pos >= k - 1; --pos) {
    const int beta = ordering.at(pos);
    C c = out.reduced.coeff(g.positive(beta));
    C t = over_root(c, beta);
    out.steps.push_back({beta, t});
    if (!coeff_is_zero(t)) {
      out.reduced = ad_exp(g, LieVector<C>::basis(g.positive(beta), t), out.reduced);
    }
    if (!coeff_is_zero(out.reduced.coeff(g.positive(beta))))
      throw InternalError("reduction step left a nonzero coefficient on " + g.symbol_name(beta));
  }
  return out;
}

/// Inverse of reduce_borel: applies Ad e^{-t e_beta} in the reverse of the
/// processing order, starting from `reduced`.
template <class C>
LieVector<C> replay(const ChevalleyBasis& g, const std::vector<ReductionStep<C>>& steps, const LieVector<C>& reduced) {
  LieVector<C> y = reduced;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (coeff_is_zero(it->t)) continue;
    y = ad_exp(g, LieVector<C>::basis(g.positive(it->root), -it->t), y);
  }
  return y;
}

// --- numeric decomposition --------------------------------------------------

/// beta(h) for the Cartan part of a rational element.
Rational root_value(const ChevalleyBasis& g, const LieElement& y, int beta);

struct Decomposition {
  std::vector<ReductionStep<Rational>> steps;  // beta_N first
  LieElement h_part;
};

/// y = Ad e^{-t_N e_{beta_N}} ... Ad e^{-t_1 e_{beta_1}} h for regular y in b.
Decomposition decompose(const ChevalleyBasis& g, const LieElement& y, const NormalOrdering& ordering);

struct PartialDecomposition {
  std::vector<ReductionStep<Rational>> steps;  // beta_N..beta_k
  LieElement reduced;
};

PartialDecomposition partial_decompose(const ChevalleyBasis& g, const LieElement& y, const NormalOrdering& ordering,
                                       int k);

/// Throws EngineError naming the first positive root vanishing on the Cartan part.
void require_regular(const ChevalleyBasis& g, const LieElement& y);

std::string to_string(const ChevalleyBasis& g, const LieElement& x);

}  // namespace lie
