#pragma once

// Root systems of finite type, Weyl group elements as integer matrices, and
// normal (convex) orderings of the positive roots.
//
// Conventions: the Cartan matrix entry a(i,j) is alpha_j(h_i), the value of the
// j-th simple root on the i-th simple coroot. Roots live in simple-root
// coordinates, coroots in simple-coroot coordinates.

#include "lie/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lie {

using IntMatrix = std::vector<IntVec>;

/// Cartan matrix for a Bourbaki type label such as "A2", "B3", "G2", "E6".
IntMatrix cartan_matrix_for_type(std::string_view label);

class RootSystem {
 public:
  /// Builds the root system; throws InputError unless the matrix is a Cartan
  /// matrix of finite type.
  static RootSystem from_cartan(const IntMatrix& cartan);
  static RootSystem from_label(std::string_view label);

  int rank() const { return rank_; }
  /// Number of positive roots.
  int size() const { return static_cast<int>(positive_.size()); }
  const IntMatrix& cartan() const { return cartan_; }
  const std::string& label() const { return label_; }

  /// Positive roots sorted by height, simple roots first in index order.
  const std::vector<IntVec>& positive_roots() const { return positive_; }
  const IntVec& root(int index) const { return positive_.at(index); }
  /// Coroot h_alpha of the positive root with this index, in simple-coroot
  /// coordinates.
  const IntVec& coroot(int index) const { return coroots_.at(index); }
  int height(int index) const { return heights_.at(index); }
  /// Index of the simple root alpha_i among the positive roots.
  int simple_index(int i) const { return simple_.at(i); }

  /// Index of a positive root, or nullopt if v is not a positive root.
  std::optional<int> find_positive(const IntVec& v) const;
  /// True if v or -v is a positive root.
  bool is_root(const IntVec& v) const;

  /// lambda(h_i) for the i-th simple coroot; lambda in simple-root coordinates.
  int pairing_simple(const IntVec& lambda, int i) const;
  /// lambda(h_beta) for the positive root with index beta.
  int pairing(const IntVec& lambda, int beta) const;
  /// alpha(h_beta) for two positive-root indices.
  int root_pairing(int alpha, int beta) const { return pairing_table_[alpha][beta]; }

  /// rho(h_beta), rho the half-sum of positive roots.
  const Rational& rho(int beta) const { return rho_.at(beta); }

  /// Symmetrized form (x, y) with (alpha_i, alpha_i) = 2 d_i, d_i coprime integers.
  Rational form(const IntVec& x, const IntVec& y) const;
  /// Integer symmetrizer d_i.
  const IntVec& symmetrizer() const { return sym_; }

 private:
  RootSystem() = default;

  int rank_ = 0;
  std::string label_;
  IntMatrix cartan_;
  IntVec sym_;
  std::vector<IntVec> positive_;
  std::vector<IntVec> coroots_;
  std::vector<int> heights_;
  std::vector<int> simple_;
  std::vector<std::vector<int>> pairing_table_;
  std::vector<Rational> rho_;
};

/// Linear map on the root lattice, stored as an integer matrix acting on
/// simple-root coordinate columns. Optionally remembers a word in simple
/// reflections (0-based indices) that produced it.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(IntMatrix m, std::optional<std::vector<int>> word = std::nullopt)
      : matrix_(std::move(m)), word_(std::move(word)) {}

  static WeylElement identity(int rank);
  /// Reflection s_beta(lambda) = lambda - lambda(h_beta) beta.
  static WeylElement reflection(const RootSystem& rs, int beta);
  static WeylElement simple_reflection(const RootSystem& rs, int i);
  static WeylElement from_word(const RootSystem& rs, std::span<const int> word);

  const IntMatrix& matrix() const { return matrix_; }
  /// Word in simple reflections, when the element was built from one.
  const std::optional<std::vector<int>>& word() const { return word_; }

  IntVec apply(const IntVec& v) const;
  WeylElement operator*(const WeylElement& other) const;
  WeylElement inverse() const;
  bool operator==(const WeylElement& other) const { return matrix_ == other.matrix_; }
  bool is_identity() const;

 private:
  IntMatrix matrix_;
  std::optional<std::vector<int>> word_;
};

/// A permutation beta_1..beta_N of the positive roots, stored as root indices.
/// Positions in the public API are 1-based where they mirror the usual
/// beta_1..beta_N notation (suffix index k), 0-based everywhere else.
class NormalOrdering {
 public:
  NormalOrdering() = default;
  explicit NormalOrdering(std::vector<int> seq);

  const std::vector<int>& sequence() const { return seq_; }
  int size() const { return static_cast<int>(seq_.size()); }
  /// Root index at 0-based position.
  int at(int pos) const { return seq_.at(pos); }
  /// 0-based position of a root index.
  int position(int root) const { return pos_.at(root); }
  bool operator==(const NormalOrdering& o) const { return seq_ == o.seq_; }

 private:
  std::vector<int> seq_;
  std::vector<int> pos_;
};

/// Betweenness condition: for every positive gamma = alpha + beta, gamma sits
/// strictly between alpha and beta. seq must be a permutation of root indices.
bool validate_normal_ordering(const RootSystem& rs, std::span<const int> seq);

/// beta_t = s_{i_1}...s_{i_{t-1}}(alpha_{i_t}) for a reduced word of w0
/// (0-based simple indices). Throws InputError on non-reduced words.
NormalOrdering normal_ordering_from_reduced_word(const RootSystem& rs,
                                                 std::span<const int> word);

/// All reduced words of the longest element in lexicographic order, at most
/// `limit` of them.
std::vector<std::vector<int>> reduced_words_of_longest(const RootSystem& rs,
                                                       std::size_t limit = SIZE_MAX);

/// Normal ordering from the lexicographically least reduced word of w0.
NormalOrdering default_normal_ordering(const RootSystem& rs);

/// Every normal ordering (rank <= 2 in practice) or the first `limit` in
/// lexicographic order of their reduced words.
std::vector<NormalOrdering> enumerate_normal_orderings(const RootSystem& rs,
                                                       std::size_t limit = SIZE_MAX);

/// w = s_{beta_k} ... s_{beta_N}, k 1-based in [1, N+1].
WeylElement weyl_from_suffix(const RootSystem& rs, const NormalOrdering& ordering, int k);

/// Inversion set {alpha > 0 : w^{-1} alpha < 0}, sorted root indices.
std::vector<int> delta_w(const RootSystem& rs, const WeylElement& w);

int weyl_length(const RootSystem& rs, const WeylElement& w);

/// Lexicographically least reduced word (0-based simple indices).
std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w);

WeylElement longest_element(const RootSystem& rs);

/// Normal ordering with w = s_{beta_k}...s_{beta_N} and Delta_w = {beta_k..beta_N}.
struct AdaptedOrdering {
  NormalOrdering ordering;
  int k = 1;  // 1-based
};
AdaptedOrdering adapted_normal_ordering(const RootSystem& rs, const WeylElement& w);

/// w(Delta_+ \ Delta_{w^{-1}}), sorted root indices; all positive.
std::vector<int> w_complement_roots(const RootSystem& rs, const WeylElement& w);

/// Breadth-first enumeration of W, identity first.
std::vector<WeylElement> weyl_group_elements(const RootSystem& rs);

bool is_positive(const IntVec& v);
bool is_negative(const IntVec& v);
IntVec negate(IntVec v);
IntVec add(const IntVec& a, const IntVec& b);

}  // namespace lie
