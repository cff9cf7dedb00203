#include "lie/acceptance.hpp"

#include "lie/classical.hpp"
#include "lie/quantum.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace lie {

namespace {

using Rng = std::mt19937_64;

class Checker {
 public:
  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++count_;
    if (!ok && first_.empty()) first_ = describe();
  }
  long count() const { return count_; }
  const std::string& failure() const { return first_; }

 private:
  long count_ = 0;
  std::string first_;
};

Rational rand_q(Rng& rng, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 3);
  return make_rational(num(rng), den(rng));
}

LieElement random_borel(const ChevalleyBasis& g, Rng& rng) {
  const RootSystem& rs = g.roots();
  for (;;) {
    LieElement y;
    for (int i = 0; i < rs.rank(); ++i) y.add(g.cartan(i), rand_q(rng, -9, 9));
    bool regular = true;
    for (int b = 0; b < rs.size(); ++b) regular = regular && sgn(root_value(g, y, b)) != 0;
    if (!regular) continue;
    for (int b = 0; b < rs.size(); ++b) y.add(g.positive(b), rand_q(rng));
    return y;
  }
}

// Random function in the given coordinate symbols.
PolyFunc random_function(const ClassicalContext& ctx, const std::vector<int>& symbols, Rng& rng, bool denominators,
                         int terms = 3, int max_deg = 2) {
  const RootSystem& rs = ctx.roots();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(symbols.size()) - 1), deg(0, max_deg),
      var(0, rs.rank() - 1), root(0, rs.size() - 1), coin(0, 1);
  PolyFunc f;
  for (int t = 0; t < terms; ++t) {
    PolyFunc m(LocRat(ctx.ring(), rand_q(rng)));
    if (!symbols.empty())
      for (int d = deg(rng); d > 0; --d) m = m * PolyFunc::symbol(symbols[pick(rng)]);
    if (coin(rng)) m = m * (PolyFunc(LocRat::variable(ctx.ring(), var(rng))) + PolyFunc(rand_q(rng)));
    if (denominators && coin(rng)) m = m * LocRat::inverse_factor(ctx.ring(), root(rng));
    f += m;
  }
  return f;
}

std::vector<int> negative_symbols(const ChevalleyBasis& g) {
  std::vector<int> s;
  for (int b = 0; b < g.num_roots(); ++b) s.push_back(g.negative(b));
  return s;
}

std::vector<int> carrier_symbols(const Carrier& c) {
  std::vector<int> s;
  for (std::size_t i = 0; i < c.allowed.size(); ++i)
    if (c.allowed[i]) s.push_back(static_cast<int>(i));
  return s;
}

LocRat random_dh(const QuantumContext& q, Rng& rng, bool rational) {
  const RootSystem& rs = q.roots();
  std::uniform_int_distribution<int> var(0, rs.rank() - 1), root(0, rs.size() - 1), shift(-2, 3), coin(0, 2);
  LocRat c(q.ring(), rand_q(rng));
  if (coin(rng)) c += LocRat::variable(q.ring(), var(rng)) * LocRat(rand_q(rng));
  if (rational && coin(rng)) c *= LocRat::inverse_factor(q.ring(), root(rng), shift(rng));
  if (c.is_zero()) c = LocRat(q.ring(), Rational(1));
  return c;
}

// Random element over `basis` supported on positions [lo, hi).
UElement random_u(const QuantumContext& q, const std::shared_ptr<const PbwBasis>& basis, Rng& rng, int lo, int hi,
                  bool rational, int terms = 3, int max_deg = 2) {
  std::uniform_int_distribution<int> pos(lo, hi - 1), deg(0, max_deg);
  UElement u(basis);
  for (int t = 0; t < terms; ++t) {
    UElement::Mono m(basis->size(), 0);
    for (int d = deg(rng); d > 0; --d) ++m[pos(rng)];
    u.add_term(m, random_dh(q, rng, rational));
  }
  return u;
}

std::vector<NormalOrdering> orderings_for(const RootSystem& rs) {
  return rs.rank() <= 2 ? enumerate_normal_orderings(rs) : enumerate_normal_orderings(rs, 5);
}

std::string ordering_name(const RootSystem& rs, const NormalOrdering& o) {
  std::string s = "(";
  for (int i = 0; i < o.size(); ++i) s += (i ? " " : "") + to_string(rs.root(o.at(i)));
  return s + ")";
}

// --- 1 ---------------------------------------------------------------------

void suite_replay(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  for (const char* label : {"A1", "A2", "B2", "A3"}) {
    auto rs = RootSystem::from_label(label);
    ChevalleyBasis g(rs);
    for (const auto& ord : enumerate_normal_orderings(rs, 2)) {
      for (int it = 0; it < 100; ++it) {
        LieElement y = random_borel(g, rng);
        auto d = decompose(g, y, ord);
        c.check(replay(g, d.steps, d.h_part) == y,
                [&] { return std::string(label) + ": replay differs from y = " + to_string(g, y); });
      }
    }
  }
}

// --- 2, 3 ------------------------------------------------------------------

std::vector<const char*> projector_algebras(const SuiteOptions& opt) {
  std::vector<const char*> v{"A1", "A2", "B2", "A3"};
  if (opt.slow) v.insert(v.end(), {"B3", "C3"});
  return v;
}

void suite_classical_projector(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed + 2);
  for (const char* label : projector_algebras(opt)) {
    auto rs = RootSystem::from_label(label);
    ClassicalContext ctx(rs);
    const auto& g = ctx.lie();
    auto neg = negative_symbols(g);
    std::uniform_int_distribution<int> root(0, rs.size() - 1);
    for (const auto& ord : orderings_for(rs)) {
      auto where = [&](const PolyFunc& f) {
        return std::string(label) + " " + ordering_name(rs, ord) + ", f = " + ctx.to_string(f);
      };
      for (int it = 0; it < 20; ++it) {
        PolyFunc f = random_function(ctx, neg, rng, true);
        PolyFunc pf = ctx.project(f, ord);
        c.check(pf == PolyFunc(f.constant_part()), [&] { return where(f) + ": P f is not the Cartan restriction"; });
        c.check(ctx.project(pf, ord) == pf, [&] { return where(f) + ": P is not idempotent"; });
        for (int i = 0; i < rs.rank(); ++i)
          c.check(ctx.e_action(rs.simple_index(i), pf).is_zero(), [&] { return where(f) + ": P f is not invariant"; });
        PolyFunc k = ctx.c_coord(root(rng)) * random_function(ctx, neg, rng, true, 2, 1);
        c.check(ctx.project(k, ord).is_zero(), [&] { return where(k) + ": kernel element not annihilated"; });
      }
    }
  }
}

void suite_partial_projectors(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed + 3);
  for (const char* label : projector_algebras(opt)) {
    auto rs = RootSystem::from_label(label);
    ClassicalContext ctx(rs);
    auto neg = negative_symbols(ctx.lie());
    const int n = rs.size();
    for (const auto& ord : orderings_for(rs)) {
      for (int k = 1; k <= n + 1; ++k) {
        for (int it = 0; it < 5; ++it) {
          PolyFunc f = random_function(ctx, neg, rng, true);
          PolyFunc pk = ctx.project_partial(f, ord, k);
          for (int j = k; j <= n; ++j)
            c.check(ctx.e_action(ord.at(j - 1), pk).is_zero(), [&] {
              return std::string(label) + " " + ordering_name(rs, ord) + ", k = " + std::to_string(k) +
                     ": e_beta_" + std::to_string(j) + " does not kill P_{>=k} f for f = " + ctx.to_string(f);
            });
        }
      }
    }
  }
}

// --- 4 ---------------------------------------------------------------------

void suite_quantum_projector(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed + 4);
  for (const char* label : {"A1", "A2", "B2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    const auto& g = q.lie();
    auto ord = default_normal_ordering(rs);
    auto b = q.verma_basis();
    for (int it = 0; it < 20; ++it) {
      UElement v = random_u(q, b, rng, 0, rs.size(), true);
      auto where = [&](const std::string& what) { return std::string(label) + ", v = " + q.to_string(v, true) + ": " + what; };
      UElement pv = q.extremal_projector(v, ord);
      UElement oracle(b);
      oracle.add_term(UElement::Mono(b->size(), 0), v.scalar_part());
      c.check(pv == oracle, [&] { return where("p v is not the F-degree zero part"); });
      c.check(q.extremal_projector(pv, ord) == pv, [&] { return where("p is not idempotent"); });
      for (int i = 0; i < rs.rank(); ++i)
        c.check(q.act_generator(g.positive(rs.simple_index(i)), pv).is_zero(),
                [&] { return where("p v is not a singular vector"); });
      for (int beta = 0; beta < rs.size(); ++beta)
        c.check(q.extremal_projector(q.act_generator(g.negative(beta), v), ord).is_zero(),
                [&] { return where("p does not kill e_{-beta} v"); });
      for (int i = 0; i < rs.rank(); ++i) {
        LieElement h = LieElement::basis(g.cartan(i), 1);
        c.check(q.act(h, pv) == q.extremal_projector(q.act(h, v), ord),
                [&] { return where("p does not commute with h"); });
      }
    }
  }
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  auto orders = enumerate_normal_orderings(rs);
  auto other = PbwBasis::verma(q.lie(), orders.at(1));
  for (int it = 0; it < 20; ++it) {
    UElement v = random_u(q, q.verma_basis(), rng, 0, rs.size(), true);
    UElement a = q.extremal_projector(v, orders[0]);
    UElement b = q.rebase(q.extremal_projector(q.rebase(v, other), orders[1]), q.verma_basis());
    c.check(a == b, [&] { return "A2: p depends on the normal ordering for v = " + q.to_string(v, true); });
  }
}

// --- 5 ---------------------------------------------------------------------

void suite_sl2(Checker& c, const SuiteOptions&) {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto b = q.verma_basis();
  const int e = g.positive(0), f = g.negative(0);
  c.check(rs.rho(0) == 1, [] { return std::string("rho(h_alpha) != 1"); });
  UElement v0 = q.v0();
  UElement fv = q.act_generator(f, v0);
  // Two-term series by hand: F v0 - (h+2)^{-1} F E F v0.
  UElement second = q.act_generator(f, q.act_generator(e, fv)).scaled(LocRat::inverse_factor(q.ring(), 0, 2));
  c.check((fv - second).is_zero(), [] { return std::string("hand series for p(F v0) is not zero"); });
  c.check(q.p_alpha_t(0, rs.rho(0), fv).is_zero(), [] { return std::string("p_alpha(1)(F v0) != 0"); });
  c.check(q.extremal_projector(fv, default_normal_ordering(rs)).is_zero(), [] { return std::string("p(F v0) != 0"); });

  auto ord = default_normal_ordering(rs);
  auto t = q.twisted_basis(ord, 1);
  UElement hv = q.scalar(t, LocRat::variable(q.ring(), 0));
  UElement expect = q.scalar(b, LocRat::variable(q.ring(), 0) + LocRat(q.ring(), Rational(2)));
  UElement got = q.zhelobenko_qw(ord, 1, hv);
  c.check(got == expect, [&] { return "q_s(h v0) = " + q.to_string(got, true) + ", expected (h+2) v0"; });
  UElement ev = q.generator(t, e);
  c.check(q.zhelobenko_qw(ord, 1, ev).is_zero(), [] { return std::string("q_s(E v0) != 0"); });
  c.check(q.zhelobenko_qw(ord, 1, q.one(t)) == v0, [] { return std::string("q_s(v0) != v0"); });
}

// --- 6 ---------------------------------------------------------------------

void suite_quantum_zhelobenko(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed + 6);
  for (const char* label : {"A1", "A2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    const auto& g = q.lie();
    const int n = rs.size();
    for (const auto& ord : enumerate_normal_orderings(rs)) {
      for (int k = 1; k <= n; ++k) {
        auto t = q.twisted_basis(ord, k);
        std::uniform_int_distribution<int> ideal(n, 2 * n - 1);
        for (int it = 0; it < 4; ++it) {
          UElement x = random_u(q, t, rng, 0, n, false, 3, 2);
          auto where = [&](const std::string& what) {
            return std::string(label) + " " + ordering_name(rs, ord) + ", k = " + std::to_string(k) +
                   ", x = " + q.to_string(x, true) + ": " + what;
          };
          UElement y = q.zhelobenko_qw(ord, k, x);
          for (int j = k; j <= n; ++j)
            c.check(q.act_generator(g.positive(ord.at(j - 1)), y).is_zero(),
                    [&] { return where("image not killed by e_beta_" + std::to_string(j)); });
          for (int j = k; j <= n; ++j)
            c.check(q.zhelobenko_qw(ord, k, q.act_generator(g.positive(ord.at(j - 1)), x)).is_zero(),
                    [&] { return where("e_beta_" + std::to_string(j) + " x not in the kernel"); });
          UElement u = random_u(q, t, rng, 0, 2 * n, false, 2, 1);
          UElement pert = x + q.multiply(u, q.generator(t, t->symbol_at(ideal(rng))));
          c.check(q.zhelobenko_qw(ord, k, pert) == y, [&] { return where("depends on the representative"); });
        }
      }
    }
  }
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  std::vector<int> w1{0, 1, 0}, w2{1, 0, 1};
  auto o1 = normal_ordering_from_reduced_word(rs, w1), o2 = normal_ordering_from_reduced_word(rs, w2);
  auto t1 = q.twisted_basis(o1, 1), t2 = q.twisted_basis(o2, 1);
  for (int it = 0; it < 10; ++it) {
    UElement x = random_u(q, t1, rng, 0, rs.size(), false, 3, 2);
    UElement a = q.zhelobenko_qw(o1, 1, x);
    UElement b = q.zhelobenko_qw(o2, 1, q.quotient(q.rebase(x, t2)));
    c.check(a == b, [&] { return "A2 w0: q_w depends on the ordering for x = " + q.to_string(x, true); });
  }
}

// --- 7 ---------------------------------------------------------------------

void suite_classical_zhelobenko(Checker& c, const SuiteOptions& opt) {
  Rng rng(opt.seed + 7);
  for (const char* label : {"A1", "A2"}) {
    auto rs = RootSystem::from_label(label);
    ClassicalContext ctx(rs);
    const auto& g = ctx.lie();
    for (const auto& w : weyl_group_elements(rs)) {
      auto ad = adapted_normal_ordering(rs, w);
      auto symbols = carrier_symbols(ctx.carrier_bw(w));
      auto dw = delta_w(rs, w);
      auto where = [&](const PolyFunc& f, const std::string& what) {
        return std::string(label) + ", w of length " + std::to_string(dw.size()) + ", f = " + ctx.to_string(f) +
               ": " + what;
      };
      for (int it = 0; it < 4; ++it) {
        PolyFunc f = random_function(ctx, symbols, rng, true);
        PolyFunc qf = ctx.zhelobenko_classical(ad.ordering, ad.k, f);
        for (int a : dw) {
          c.check(ctx.e_action(a, qf).is_zero(), [&] { return where(f, "Q_w f is not invariant"); });
          PolyFunc k = ctx.e_hat(rs.root(a)) * random_function(ctx, symbols, rng, true, 2, 1);
          c.check(ctx.zhelobenko_classical(ad.ordering, ad.k, k).is_zero(),
                  [&] { return where(k, "kernel element not annihilated"); });
        }
        for (int s = 0; s < 50; ++s) {
          LieElement y = random_borel(g, rng);
          auto red = partial_decompose(g, y, ad.ordering, ad.k);
          c.check(ctx.eval(qf, y) == ctx.eval(f, red.reduced),
                  [&] { return where(f, "evaluation oracle fails at y = " + to_string(g, y)); });
        }
        PolyFunc p = random_function(ctx, symbols, rng, false);
        PolyFunc sub = ctx.zhelobenko_classical(ad.ordering, ad.k, p);
        c.check(ctx.zhelobenko_classical_series(ad.ordering, ad.k, p) == sub,
                [&] { return where(p, "truncated series differs from substitution"); });
        // Later factors see H^{-1} coefficients, so plain brackets only terminate for one factor.
        if (dw.size() == 1)
          c.check(ctx.zhelobenko_classical_series(ad.ordering, ad.k, p, SeriesMode::kLiteral) == sub,
                  [&] { return where(p, "literal series differs from substitution"); });
      }
    }
  }
}

// --- 8 ---------------------------------------------------------------------

void suite_combinatorics(Checker& c, const SuiteOptions&) {
  for (const char* label : {"A1", "A2", "B2", "G2", "A3", "B3", "C3"}) {
    auto rs = RootSystem::from_label(label);
    const int n = rs.size();
    for (const auto& ord : enumerate_normal_orderings(rs)) {
      for (int k = 1; k <= n + 1; ++k) {
        std::vector<int> expect(ord.sequence().begin() + (k - 1), ord.sequence().end());
        std::sort(expect.begin(), expect.end());
        c.check(delta_w(rs, weyl_from_suffix(rs, ord, k)) == expect, [&] {
          return std::string(label) + " " + ordering_name(rs, ord) + ", k = " + std::to_string(k) +
                 ": inversion set is not the suffix";
        });
      }
    }
    for (const auto& w : weyl_group_elements(rs)) {
      std::set<IntVec> image, target;
      for (int a : delta_w(rs, w.inverse())) image.insert(w.apply(rs.root(a)));
      for (int a : delta_w(rs, w)) target.insert(negate(rs.root(a)));
      c.check(image == target, [&] { return std::string(label) + ": w(Delta_{w^-1}) != -Delta_w"; });
    }

    ChevalleyBasis g(rs, {false, 0});
    const int d = g.dim();
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        auto X = LieElement::basis(x, 1), Y = LieElement::basis(y, 1);
        auto XY = bracket(g, X, Y);
        for (int z = 0; z < d; ++z) {
          auto Z = LieElement::basis(z, 1);
          LieElement j = bracket(g, X, bracket(g, Y, Z)) + bracket(g, Y, bracket(g, Z, X)) + bracket(g, Z, XY);
          c.check(j.is_zero(), [&] {
            return std::string(label) + ": Jacobi fails on " + g.symbol_name(x) + ", " + g.symbol_name(y) + ", " +
                   g.symbol_name(z);
          });
        }
      }
    }
    auto is_root = [&](const IntVec& v) { return rs.find_positive(v) || rs.find_positive(negate(v)); };
    for (int a = 0; a < 2 * n; ++a) {
      for (int b = 0; b < 2 * n; ++b) {
        const IntVec& va = g.weight(a);
        const IntVec& vb = g.weight(b);
        int expect = 0;
        if (is_root(add(va, vb))) {
          int p = 0;
          IntVec v = vb;
          for (;;) {
            v = add(v, negate(va));
            if (!is_root(v)) break;
            ++p;
          }
          expect = p + 1;
        }
        c.check(std::abs(g.structure_constant(a, b)) == expect, [&] {
          return std::string(label) + ": |N| != p+1 for " + g.symbol_name(a) + ", " + g.symbol_name(b);
        });
      }
    }
  }
}

using SuiteFn = void (*)(Checker&, const SuiteOptions&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

const SuiteEntry kSuites[] = {
    {"replay", suite_replay},
    {"classical-projector", suite_classical_projector},
    {"partial-projectors", suite_partial_projectors},
    {"quantum-projector", suite_quantum_projector},
    {"sl2-closed-forms", suite_sl2},
    {"quantum-zhelobenko", suite_quantum_zhelobenko},
    {"classical-zhelobenko", suite_classical_zhelobenko},
    {"combinatorics", suite_combinatorics},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

int suite_id(const std::string& name) {
  const auto& names = suite_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name || std::to_string(i + 1) == name) return static_cast<int>(i) + 1;
  return 0;
}

SuiteResult run_suite(int id, const SuiteOptions& options) {
  if (id < 1 || id > static_cast<int>(std::size(kSuites))) throw InputError("unknown suite id " + std::to_string(id));
  SuiteResult r;
  r.id = id;
  r.name = kSuites[id - 1].name;
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  try {
    kSuites[id - 1].fn(c, options);
    r.passed = c.failure().empty();
    r.detail = c.failure();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.checks = c.count();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace lie
