#include "lie/roots.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lie {

namespace {

IntMatrix chain(int n) {
  IntMatrix a(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

int parse_rank(std::string_view label, std::size_t from) {
  if (from >= label.size()) throw InputError("missing rank in type label '" + std::string(label) + "'");
  int n = 0;
  for (std::size_t i = from; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9')
      throw InputError("malformed type label '" + std::string(label) + "'");
    n = n * 10 + (label[i] - '0');
    if (n > 64) throw InputError("rank too large in '" + std::string(label) + "'");
  }
  return n;
}

// Rational Gaussian elimination: all leading principal pivots positive.
bool positive_definite(const std::vector<std::vector<Rational>>& m) {
  auto a = m;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace

IntMatrix cartan_matrix_for_type(std::string_view label) {
  if (label.empty()) throw InputError("empty type label");
  const char t = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  const int n = parse_rank(label, 1);
  IntMatrix a;
  switch (t) {
    case 'A':
      if (n < 1) break;
      return chain(n);
    case 'B':
      if (n < 2) break;
      a = chain(n);
      a[n - 1][n - 2] = -2;
      return a;
    case 'C':
      if (n < 2) break;
      a = chain(n);
      a[n - 2][n - 1] = -2;
      return a;
    case 'D':
      if (n < 4) break;
      a = chain(n);
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      return a;
    case 'E': {
      if (n < 6 || n > 8) break;
      a.assign(n, IntVec(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return a;
    }
    case 'F':
      if (n != 4) break;
      a = chain(4);
      a[2][1] = -2;
      return a;
    case 'G':
      if (n != 2) break;
      return {{2, -3}, {-1, 2}};
    default:
      break;
  }
  throw InputError("unknown or unsupported type label '" + std::string(label) + "'");
}

RootSystem RootSystem::from_label(std::string_view label) {
  RootSystem rs = from_cartan(cartan_matrix_for_type(label));
  rs.label_ = std::string(label);
  return rs;
}

RootSystem RootSystem::from_cartan(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw InputError("Cartan matrix is empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) throw InputError("Cartan matrix is not square");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j && a[i][j] != 2)
        throw InputError("Cartan matrix diagonal entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") must be 2");
      if (i != j && a[i][j] > 0)
        throw InputError("Cartan matrix off-diagonal entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") must be <= 0");
      if (i != j && (a[i][j] == 0) != (a[j][i] == 0))
        throw InputError("Cartan matrix zero pattern is not symmetric at (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }

  // Symmetrizer: d_i a_ij = d_j a_ji, propagated along each connected component.
  std::vector<Rational> d(n, Rational(0));
  for (int start = 0; start < n; ++start) {
    if (sgn(d[start]) != 0) continue;
    d[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0) continue;
        Rational dj = d[i] * a[i][j] / a[j][i];
        if (sgn(d[j]) == 0) {
          d[j] = dj;
          queue.push_back(j);
        } else if (d[j] != dj) {
          throw InputError("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = d[i] * a[i][j];
  if (!positive_definite(b)) throw InputError("Cartan matrix is not of finite type");

  Integer den_lcm = 1;
  for (const auto& x : d) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  IntVec sym(n);
  Integer g = 0;
  for (int i = 0; i < n; ++i) {
    Rational s = d[i] * den_lcm;
    sym[i] = static_cast<int>(s.get_num().get_si());
    g = gcd(g, Integer(sym[i]));
  }
  for (auto& s : sym) s /= static_cast<int>(g.get_si());

  RootSystem rs;
  rs.rank_ = n;
  rs.cartan_ = a;
  rs.sym_ = sym;

  // Closure by root strings: beta + alpha_i is a root iff q > 0 where
  // q = p - beta(h_i), p the largest integer with beta - p alpha_i a root.
  std::set<IntVec> found;
  std::vector<IntVec> layer;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    layer.push_back(e);
    found.insert(e);
  }
  std::vector<IntVec> all = layer;
  constexpr std::size_t kMaxRoots = 4096;
  while (!layer.empty()) {
    std::vector<IntVec> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < n; ++i) {
        int p = 0;
        IntVec down = beta;
        while (true) {
          down[i] -= 1;
          if (!found.count(down)) break;
          ++p;
        }
        int q = p - rs.pairing_simple(beta, i);
        if (q > 0) {
          IntVec up = beta;
          up[i] += 1;
          if (found.insert(up).second) {
            next.push_back(up);
            all.push_back(up);
          }
        }
      }
    }
    if (all.size() > kMaxRoots) throw InputError("root closure does not terminate; not of finite type");
    layer = std::move(next);
  }

  auto height_of = [](const IntVec& v) { return std::accumulate(v.begin(), v.end(), 0); };
  std::stable_sort(all.begin(), all.end(), [&](const IntVec& x, const IntVec& y) {
    int hx = height_of(x), hy = height_of(y);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  rs.positive_ = all;
  const int count = static_cast<int>(all.size());
  rs.heights_.resize(count);
  rs.simple_.assign(n, -1);
  for (int k = 0; k < count; ++k) {
    rs.heights_[k] = height_of(all[k]);
    if (rs.heights_[k] == 1) {
      for (int i = 0; i < n; ++i)
        if (all[k][i] == 1) rs.simple_[i] = k;
    }
  }

  // Coroot: beta^vee = 2/(beta,beta) * sum c_i d_i alpha_i^vee.
  rs.coroots_.resize(count);
  for (int k = 0; k < count; ++k) {
    const IntVec& c = all[k];
    Rational norm = rs.form(c, c);
    IntVec b(n);
    for (int i = 0; i < n; ++i) {
      Rational bi = Rational(2 * c[i] * sym[i]) / norm;
      if (bi.get_den() != 1) throw InternalError("non-integral coroot for " + to_string(c));
      b[i] = static_cast<int>(bi.get_num().get_si());
    }
    rs.coroots_[k] = b;
  }

  rs.pairing_table_.assign(count, std::vector<int>(count));
  for (int x = 0; x < count; ++x)
    for (int y = 0; y < count; ++y) rs.pairing_table_[x][y] = rs.pairing(all[x], y);

  // rho(h_beta) from the half-sum itself, not from rho(h_i) = 1.
  rs.rho_.resize(count);
  for (int k = 0; k < count; ++k) {
    Rational s = 0;
    for (int x = 0; x < count; ++x) s += rs.pairing_table_[x][k];
    rs.rho_[k] = s / 2;
  }

  for (int k = 0; k < count; ++k) {
    if (rs.pairing_table_[k][k] != 2) throw InternalError("alpha(h_alpha) != 2 for " + to_string(all[k]));
  }
  for (int i = 0; i < n; ++i) {
    if (rs.rho_[rs.simple_[i]] != 1) throw InternalError("rho(h_i) != 1");
  }
  std::ostringstream lbl;
  lbl << "cartan" << n;
  rs.label_ = lbl.str();
  return rs;
}

std::optional<int> RootSystem::find_positive(const IntVec& v) const {
  if (static_cast<int>(v.size()) != rank_) return std::nullopt;
  // Roots are sorted by height then reverse-lex, so binary search is possible,
  // but N is small and a linear scan keeps this simple.
  for (int k = 0; k < size(); ++k)
    if (positive_[k] == v) return k;
  return std::nullopt;
}

bool RootSystem::is_root(const IntVec& v) const {
  return find_positive(v).has_value() || find_positive(negate(v)).has_value();
}

int RootSystem::pairing_simple(const IntVec& lambda, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += cartan_[i][j] * lambda[j];
  return s;
}

int RootSystem::pairing(const IntVec& lambda, int beta) const {
  const IntVec& b = coroots_.at(beta);
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += b[i] * pairing_simple(lambda, i);
  return s;
}

Rational RootSystem::form(const IntVec& x, const IntVec& y) const {
  Rational s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += Rational(x[i] * y[j] * sym_[i] * cartan_[i][j]);
  return s;
}

// ---------------------------------------------------------------------------

bool is_positive(const IntVec& v) {
  bool any = false;
  for (int x : v) {
    if (x < 0) return false;
    any = any || x > 0;
  }
  return any;
}

bool is_negative(const IntVec& v) { return is_positive(negate(v)); }

IntVec negate(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

WeylElement WeylElement::identity(int rank) {
  IntMatrix m(rank, IntVec(rank, 0));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  return WeylElement(std::move(m), std::vector<int>{});
}

WeylElement WeylElement::reflection(const RootSystem& rs, int beta) {
  const int n = rs.rank();
  const IntVec& b = rs.coroot(beta);
  const IntVec& root = rs.root(beta);
  // (s_beta)_{kj} = delta_kj - beta_k * e_j(h_beta)
  IntMatrix m(n, IntVec(n, 0));
  for (int j = 0; j < n; ++j) {
    int ej = 0;
    for (int i = 0; i < n; ++i) ej += b[i] * rs.cartan()[i][j];
    for (int k = 0; k < n; ++k) m[k][j] = (k == j ? 1 : 0) - root[k] * ej;
  }
  return WeylElement(std::move(m));
}

WeylElement WeylElement::simple_reflection(const RootSystem& rs, int i) {
  WeylElement s = reflection(rs, rs.simple_index(i));
  s.word_ = std::vector<int>{i};
  return s;
}

WeylElement WeylElement::from_word(const RootSystem& rs, std::span<const int> word) {
  WeylElement w = identity(rs.rank());
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw InputError("simple reflection index out of range");
    w = w * simple_reflection(rs, i);
  }
  return w;
}

IntVec WeylElement::apply(const IntVec& v) const {
  const std::size_t n = matrix_.size();
  IntVec r(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) r[k] += matrix_[k][j] * v[j];
  return r;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  const std::size_t n = matrix_.size();
  IntMatrix m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (matrix_[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) m[i][j] += matrix_[i][k] * o.matrix_[k][j];
    }
  std::optional<std::vector<int>> w;
  if (word_ && o.word_) {
    w = *word_;
    w->insert(w->end(), o.word_->begin(), o.word_->end());
  }
  return WeylElement(std::move(m), std::move(w));
}

WeylElement WeylElement::inverse() const {
  const std::size_t n = matrix_.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = matrix_[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) throw InternalError("singular Weyl matrix");
    std::swap(a[piv], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  IntMatrix m(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][n + j].get_den() != 1) throw InternalError("non-integral Weyl inverse");
      m[i][j] = static_cast<int>(a[i][n + j].get_num().get_si());
    }
  std::optional<std::vector<int>> w;
  if (word_) w.emplace(word_->rbegin(), word_->rend());
  return WeylElement(std::move(m), std::move(w));
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < matrix_.size(); ++i)
    for (std::size_t j = 0; j < matrix_.size(); ++j)
      if (matrix_[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

NormalOrdering::NormalOrdering(std::vector<int> seq) : seq_(std::move(seq)), pos_(seq_.size(), -1) {
  for (std::size_t p = 0; p < seq_.size(); ++p) {
    int r = seq_[p];
    if (r < 0 || r >= static_cast<int>(seq_.size()) || pos_[r] != -1)
      throw InputError("ordering is not a permutation of the positive roots");
    pos_[r] = static_cast<int>(p);
  }
}

bool validate_normal_ordering(const RootSystem& rs, std::span<const int> seq) {
  const int count = rs.size();
  if (static_cast<int>(seq.size()) != count) return false;
  std::vector<int> pos(count, -1);
  for (int p = 0; p < count; ++p) {
    if (seq[p] < 0 || seq[p] >= count || pos[seq[p]] != -1) return false;
    pos[seq[p]] = p;
  }
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      auto g = rs.find_positive(add(rs.root(a), rs.root(b)));
      if (!g) continue;
      int lo = std::min(pos[a], pos[b]);
      int hi = std::max(pos[a], pos[b]);
      if (!(lo < pos[*g] && pos[*g] < hi)) return false;
    }
  }
  return true;
}

NormalOrdering normal_ordering_from_reduced_word(const RootSystem& rs, std::span<const int> word) {
  if (static_cast<int>(word.size()) != rs.size())
    throw InputError("reduced word of w0 must have length " + std::to_string(rs.size()));
  WeylElement prefix = WeylElement::identity(rs.rank());
  std::vector<int> seq;
  std::vector<bool> used(rs.size(), false);
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw InputError("simple reflection index out of range");
    IntVec simple(rs.rank(), 0);
    simple[i] = 1;
    IntVec beta = prefix.apply(simple);
    auto idx = rs.find_positive(beta);
    if (!idx || used[*idx]) throw InputError("word is not a reduced expression of the longest element");
    used[*idx] = true;
    seq.push_back(*idx);
    prefix = prefix * WeylElement::simple_reflection(rs, i);
  }
  return NormalOrdering(std::move(seq));
}

std::vector<std::vector<int>> reduced_words_of_longest(const RootSystem& rs, std::size_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> word;
  const int n = rs.rank();
  // Appending s_i to u stays reduced iff u(alpha_i) > 0.
  auto dfs = [&](auto&& self, const WeylElement& u) -> void {
    if (out.size() >= limit) return;
    if (static_cast<int>(word.size()) == rs.size()) {
      out.push_back(word);
      return;
    }
    for (int i = 0; i < n; ++i) {
      IntVec simple(n, 0);
      simple[i] = 1;
      if (!is_positive(u.apply(simple))) continue;
      word.push_back(i);
      self(self, u * WeylElement::simple_reflection(rs, i));
      word.pop_back();
      if (out.size() >= limit) return;
    }
  };
  dfs(dfs, WeylElement::identity(n));
  return out;
}

NormalOrdering default_normal_ordering(const RootSystem& rs) {
  auto words = reduced_words_of_longest(rs, 1);
  return normal_ordering_from_reduced_word(rs, words.front());
}

std::vector<NormalOrdering> enumerate_normal_orderings(const RootSystem& rs, std::size_t limit) {
  std::vector<NormalOrdering> out;
  std::set<std::vector<int>> seen;
  for (const auto& w : reduced_words_of_longest(rs, limit)) {
    NormalOrdering o = normal_ordering_from_reduced_word(rs, w);
    if (seen.insert(o.sequence()).second) out.push_back(std::move(o));
  }
  return out;
}

WeylElement weyl_from_suffix(const RootSystem& rs, const NormalOrdering& ordering, int k) {
  const int count = rs.size();
  if (k < 1 || k > count + 1)
    throw InputError("suffix index k=" + std::to_string(k) + " outside [1, " + std::to_string(count + 1) + "]");
  WeylElement w = WeylElement::identity(rs.rank());
  for (int pos = k - 1; pos < count; ++pos) w = w * WeylElement::reflection(rs, ordering.at(pos));
  return w;
}

std::vector<int> delta_w(const RootSystem& rs, const WeylElement& w) {
  WeylElement inv = w.inverse();
  std::vector<int> out;
  for (int a = 0; a < rs.size(); ++a)
    if (is_negative(inv.apply(rs.root(a)))) out.push_back(a);
  return out;
}

int weyl_length(const RootSystem& rs, const WeylElement& w) {
  return static_cast<int>(delta_w(rs, w).size());
}

std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w) {
  // Greedy on left descents: l(s_i x) < l(x) iff x^{-1}(alpha_i) < 0.
  const int n = rs.rank();
  std::vector<int> word;
  WeylElement x = w;
  while (!x.is_identity()) {
    WeylElement inv = x.inverse();
    bool stepped = false;
    for (int i = 0; i < n; ++i) {
      IntVec simple(n, 0);
      simple[i] = 1;
      if (is_negative(inv.apply(simple))) {
        word.push_back(i);
        x = WeylElement::simple_reflection(rs, i) * x;
        stepped = true;
        break;
      }
    }
    if (!stepped) throw InternalError("element without left descent is not the identity");
  }
  return word;
}

WeylElement longest_element(const RootSystem& rs) {
  auto words = reduced_words_of_longest(rs, 1);
  return WeylElement::from_word(rs, words.front());
}

AdaptedOrdering adapted_normal_ordering(const RootSystem& rs, const WeylElement& w) {
  // s_{beta_k}...s_{beta_N} = u_{k-1} w0^{-1}, u_t the prefix products of a
  // reduced word of w0. So take a reduced word of v = w w0 and extend it by a
  // reduced word of v^{-1} w0.
  const WeylElement w0 = longest_element(rs);
  const WeylElement v = WeylElement(w.matrix()) * WeylElement(w0.matrix());
  std::vector<int> word = reduced_word(rs, v);
  const int k = static_cast<int>(word.size()) + 1;
  std::vector<int> tail = reduced_word(rs, v.inverse() * WeylElement(w0.matrix()));
  word.insert(word.end(), tail.begin(), tail.end());
  AdaptedOrdering out{normal_ordering_from_reduced_word(rs, word), k};

  WeylElement check = weyl_from_suffix(rs, out.ordering, k);
  if (!(check == w)) throw InternalError("adapted ordering does not reproduce w");
  std::vector<int> suffix(out.ordering.sequence().begin() + (k - 1), out.ordering.sequence().end());
  std::sort(suffix.begin(), suffix.end());
  if (suffix != delta_w(rs, w)) throw InternalError("adapted ordering suffix differs from Delta_w");
  return out;
}

std::vector<int> w_complement_roots(const RootSystem& rs, const WeylElement& w) {
  std::vector<int> inv_set = delta_w(rs, w.inverse());
  std::vector<int> out;
  for (int a = 0; a < rs.size(); ++a) {
    if (std::binary_search(inv_set.begin(), inv_set.end(), a)) continue;
    auto img = rs.find_positive(w.apply(rs.root(a)));
    if (!img) throw InternalError("w maps a root outside Delta_{w^-1} to a negative root");
    out.push_back(*img);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeylElement> weyl_group_elements(const RootSystem& rs) {
  std::vector<WeylElement> out{WeylElement::identity(rs.rank())};
  std::set<IntMatrix> seen{out.front().matrix()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i = 0; i < rs.rank(); ++i) {
      WeylElement next = WeylElement::simple_reflection(rs, i) * out[head];
      if (seen.insert(next.matrix()).second) out.push_back(next);
    }
  }
  return out;
}

}  // namespace lie
