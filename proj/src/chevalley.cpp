#include "lie/chevalley.hpp"

#include <sstream>

namespace lie {

namespace {

Rational norm(const RootSystem& rs, const IntVec& v) { return rs.form(v, v); }

}  // namespace

ChevalleyBasis::ChevalleyBasis(const RootSystem& rs, Options options)
    : rs_(&rs), n_(rs.size()), options_(options) {
  const int r = rs.rank();
  weights_.resize(dim());
  for (int i = 0; i < n_; ++i) {
    weights_[i] = rs.root(i);
    weights_[n_ + i] = negate(rs.root(i));
    symbol_of_[weights_[i]] = i;
    symbol_of_[weights_[n_ + i]] = n_ + i;
  }
  for (int i = 0; i < r; ++i) weights_[2 * n_ + i] = IntVec(r, 0);

  // Extraspecial pair of each non-simple positive root: least r in the root
  // order with xi - r positive.
  extraspecial_.assign(n_, {-1, -1});
  for (int xi = 0; xi < n_; ++xi) {
    if (rs.height(xi) == 1) continue;
    for (int a = 0; a < n_; ++a) {
      IntVec d = rs.root(xi);
      for (int j = 0; j < r; ++j) d[j] -= rs.root(a)[j];
      if (auto b = rs.find_positive(d)) {
        extraspecial_[xi] = {a, *b};
        break;
      }
    }
    if (extraspecial_[xi].first < 0) throw InternalError("positive root without a decomposition");
  }

  const int roots2 = 2 * n_;
  constants_.assign(static_cast<std::size_t>(roots2) * roots2, 0);
  for (int a = 0; a < roots2; ++a)
    for (int b = 0; b < roots2; ++b) constants_[static_cast<std::size_t>(a) * roots2 + b] = signed_constant(a, b);

  const int d = dim();
  table_.assign(static_cast<std::size_t>(d) * d, {});
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      auto& entry = table_[static_cast<std::size_t>(a) * d + b];
      if (is_root_symbol(a) && is_root_symbol(b)) {
        if (b == (a < n_ ? a + n_ : a - n_)) {
          const IntVec& co = rs.coroot(root_of(a));
          const int sign = a < n_ ? 1 : -1;
          for (int i = 0; i < r; ++i)
            if (co[i] != 0) entry.emplace_back(cartan(i), sign * co[i]);
        } else if (int nab = constants_[static_cast<std::size_t>(a) * roots2 + b]; nab != 0) {
          entry.emplace_back(symbol_for(add(weights_[a], weights_[b])), nab);
        }
      } else if (is_root_symbol(a) && is_cartan_symbol(b)) {
        int v = rs.pairing_simple(weights_[a], b - 2 * n_);
        if (v != 0) entry.emplace_back(a, -v);
      } else if (is_cartan_symbol(a) && is_root_symbol(b)) {
        int v = rs.pairing_simple(weights_[b], a - 2 * n_);
        if (v != 0) entry.emplace_back(b, v);
      }
    }
  }
  if (r <= options_.verify_up_to_rank) verify();
}

int ChevalleyBasis::symbol_for(const IntVec& v) const {
  auto it = symbol_of_.find(v);
  return it == symbol_of_.end() ? -1 : it->second;
}

int ChevalleyBasis::string_p(int r, int s) const {
  // Largest p with s - p r a root.
  IntVec v = rs_->root(s);
  const IntVec& rr = rs_->root(r);
  int p = 0;
  for (;;) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= rr[j];
    if (!rs_->is_root(v)) return p;
    ++p;
  }
}

int ChevalleyBasis::compute_positive(int r, int s) {
  if (auto it = positive_memo_.find({r, s}); it != positive_memo_.end()) return it->second;
  const int xi = *rs_->find_positive(add(rs_->root(r), rs_->root(s)));
  const auto [r0, s0] = extraspecial_[xi];
  int value;
  if (r == r0 && s == s0) {
    value = (string_p(r0, s0) + 1) * (options_.flip_extraspecial ? -1 : 1);
  } else if (r > s) {
    value = -compute_positive(s, r);
  } else {
    // Four-term relation for (r, s, -r0, -s0), solved for N_{r,s}.
    const int mr0 = negative(r0), ms0 = negative(s0);
    Rational sum = 0;
    IntVec d1 = add(rs_->root(s), negate(rs_->root(r0)));
    if (rs_->is_root(d1)) sum += Rational(signed_constant(s, mr0) * signed_constant(r, ms0)) / norm(*rs_, d1);
    IntVec d2 = add(rs_->root(r), negate(rs_->root(r0)));
    if (rs_->is_root(d2)) sum += Rational(signed_constant(mr0, r) * signed_constant(s, ms0)) / norm(*rs_, d2);
    Rational v = norm(*rs_, rs_->root(xi)) / Rational(compute_positive(r0, s0)) * sum;
    if (v.get_den() != 1) throw InternalError("non-integral structure constant");
    value = static_cast<int>(v.get_num().get_si());
  }
  positive_memo_[{r, s}] = value;
  return value;
}

int ChevalleyBasis::signed_constant(int a, int b) {
  IntVec sum = add(weights_[a], weights_[b]);
  if (!rs_->is_root(sum)) return 0;
  const bool pa = a < n_, pb = b < n_;
  if (pa && pb) return compute_positive(a, b);
  if (!pa && !pb) return -compute_positive(a - n_, b - n_);
  // a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b).
  const int c = symbol_for(negate(sum));
  const bool pc = c < n_;
  Rational ratio;
  int base;
  if (pc == pb) {
    base = signed_constant(b, c);
    ratio = norm(*rs_, weights_[c]) / norm(*rs_, weights_[a]);
  } else {
    base = signed_constant(c, a);
    ratio = norm(*rs_, weights_[c]) / norm(*rs_, weights_[b]);
  }
  Rational v = ratio * base;
  if (v.get_den() != 1) throw InternalError("non-integral structure constant");
  return static_cast<int>(v.get_num().get_si());
}

int ChevalleyBasis::structure_constant(int a, int b) const {
  if (!is_root_symbol(a) || !is_root_symbol(b)) throw InputError("structure_constant expects root symbols");
  return constants_[static_cast<std::size_t>(a) * 2 * n_ + b];
}

void ChevalleyBasis::verify() const {
  // |N_{r,s}| = p + 1.
  for (int a = 0; a < 2 * n_; ++a) {
    for (int b = 0; b < 2 * n_; ++b) {
      int nab = structure_constant(a, b);
      if (!rs_->is_root(add(weights_[a], weights_[b]))) continue;
      IntVec v = weights_[b];
      int p = 0;
      for (;;) {
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= weights_[a][j];
        if (!rs_->is_root(v)) break;
        ++p;
      }
      if (std::abs(nab) != p + 1) throw InternalError("structure constant has wrong magnitude");
    }
  }
  // Jacobi identity on basis triples.
  const int d = dim();
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      for (int z = 0; z < d; ++z) {
        auto X = LieElement::basis(x, 1), Y = LieElement::basis(y, 1), Z = LieElement::basis(z, 1);
        LieElement j = lie::bracket(*this, X, lie::bracket(*this, Y, Z));
        j += lie::bracket(*this, Y, lie::bracket(*this, Z, X));
        j += lie::bracket(*this, Z, lie::bracket(*this, X, Y));
        if (!j.is_zero()) throw InternalError("Jacobi identity fails for the structure constants");
      }
    }
  }
}

std::string ChevalleyBasis::symbol_name(int s) const {
  if (is_cartan_symbol(s)) {
    IntVec v(rs_->rank(), 0);
    v[s - 2 * n_] = 1;
    return "h" + to_string(v);
  }
  return "e" + to_string(weights_.at(s));
}

std::vector<Rational> ChevalleyBasis::cartan_from_root_values(const std::vector<Rational>& x) const {
  const int r = rs_->rank();
  if (static_cast<int>(x.size()) != r)
    throw InputError("expected " + std::to_string(r) + " root values, got " + std::to_string(x.size()));
  // Solve A^T a = x, (A^T)_{ij} = alpha_i(h_j) = A_{ji}.
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m[i][j] = rs_->cartan()[j][i];
    m[i][r] = x[i];
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (sgn(m[piv][c]) == 0) ++piv;
    std::swap(m[piv], m[c]);
    for (int i = 0; i < r; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (int j = c; j <= r; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> a(r);
  for (int i = 0; i < r; ++i) a[i] = m[i][r] / m[i][i];
  return a;
}

Rational root_value(const ChevalleyBasis& g, const LieElement& y, int beta) {
  const RootSystem& rs = g.roots();
  Rational v = 0;
  for (int i = 0; i < rs.rank(); ++i) {
    Rational a = y.coeff(g.cartan(i));
    if (sgn(a) != 0) v += a * rs.pairing_simple(rs.root(beta), i);
  }
  return v;
}

void require_regular(const ChevalleyBasis& g, const LieElement& y) {
  for (int beta = 0; beta < g.num_roots(); ++beta) {
    if (sgn(root_value(g, y, beta)) == 0)
      throw EngineError("element is not regular: root " + to_string(g.roots().root(beta)) +
                        " vanishes on its Cartan part");
  }
}

namespace {

std::function<Rational(const Rational&, int)> rational_divider(const ChevalleyBasis& g, const LieElement& y) {
  return [&g, &y](const Rational& c, int beta) {
    if (sgn(c) == 0) return Rational(0);
    Rational v = root_value(g, y, beta);
    if (sgn(v) == 0)
      throw EngineError("element is not regular: root " + to_string(g.roots().root(beta)) +
                        " vanishes on its Cartan part");
    return Rational(c / v);
  };
}

}  // namespace

PartialDecomposition partial_decompose(const ChevalleyBasis& g, const LieElement& y, const NormalOrdering& ordering,
                                       int k) {
  // The Cartan part is invariant under Ad of n, so root values are read from y.
  auto red = reduce_borel<Rational>(g, y, ordering, k, rational_divider(g, y));
  return {std::move(red.steps), std::move(red.reduced)};
}

Decomposition decompose(const ChevalleyBasis& g, const LieElement& y, const NormalOrdering& ordering) {
  require_regular(g, y);
  auto red = partial_decompose(g, y, ordering, 1);
  for (const auto& [s, c] : red.reduced.terms()) {
    if (!g.is_cartan_symbol(s)) throw InternalError("decomposition left a root component");
  }
  return {std::move(red.steps), std::move(red.reduced)};
}

std::string to_string(const ChevalleyBasis& g, const LieElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Cartan part first, then positive, then negative root vectors.
  std::vector<int> order;
  for (const auto& [s, c] : x.terms())
    if (g.is_cartan_symbol(s)) order.push_back(s);
  for (const auto& [s, c] : x.terms())
    if (!g.is_cartan_symbol(s)) order.push_back(s);
  for (int s : order) {
    const Rational& c = x.terms().at(s);
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << mag.get_str() << '*';
    os << g.symbol_name(s);
  }
  return os.str();
}

}  // namespace lie
