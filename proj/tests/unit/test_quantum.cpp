#include "doctest.h"
#include "lie/quantum.hpp"

#include <random>

using namespace lie;

namespace {

Rational rand_q(std::mt19937_64& rng, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 3);
  return make_rational(num(rng), den(rng));
}

LocRat random_coeff(const QuantumContext& q, std::mt19937_64& rng, bool rational) {
  const RootSystem& rs = q.roots();
  std::uniform_int_distribution<int> var(0, rs.rank() - 1), root(0, rs.size() - 1), shift(-2, 3), coin(0, 2);
  LocRat c(q.ring(), rand_q(rng));
  if (coin(rng)) c += LocRat::variable(q.ring(), var(rng)) * LocRat(rand_q(rng));
  if (rational && coin(rng)) c *= LocRat::inverse_factor(q.ring(), root(rng), shift(rng));
  if (c.is_zero()) c = LocRat(q.ring(), Rational(1));
  return c;
}

// Random element over `basis` using only positions in [lo, hi).
UElement random_element(const QuantumContext& q, const std::shared_ptr<const PbwBasis>& basis, std::mt19937_64& rng,
                        int lo, int hi, bool rational, int terms = 3, int max_deg = 2) {
  std::uniform_int_distribution<int> pos(lo, hi - 1), deg(0, max_deg);
  UElement u(basis);
  for (int t = 0; t < terms; ++t) {
    UElement::Mono m(basis->size(), 0);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) ++m[pos(rng)];
    u.add_term(m, random_coeff(q, rng, rational));
  }
  return u;
}

UElement random_verma(const QuantumContext& q, std::mt19937_64& rng, bool rational = true) {
  return random_element(q, q.verma_basis(), rng, 0, q.roots().size(), rational);
}

UElement f_degree_zero(const UElement& v) {
  UElement r(v.basis());
  r.add_term(UElement::Mono(v.basis()->size(), 0), v.scalar_part());
  return r;
}

LieElement root_vector(const ChevalleyBasis& g, int symbol) { return LieElement::basis(symbol, 1); }

}  // namespace

TEST_CASE("sl2 PBW relations") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto b = q.verma_basis();
  UElement E = q.generator(b, g.positive(0)), F = q.generator(b, g.negative(0));
  UElement h = q.scalar(b, LocRat::variable(q.ring(), 0));
  CHECK(q.multiply(E, F) == q.multiply(F, E) + h);
  CHECK(q.multiply(E, h) == q.multiply(h - q.scalar(b, LocRat(2L)), E));
  CHECK(q.to_string(q.multiply(E, F), false) == "h[1] + F[1] * E[1]");
  CHECK(q.quotient(q.multiply(E, F)) == h);
  CHECK(q.quotient(q.multiply(q.multiply(F, h), E)).is_zero());
  UElement F2h = q.multiply(q.multiply(F, F), h);
  CHECK(q.quotient(F2h) == F2h);
}

TEST_CASE("multiplication is associative") {
  std::mt19937_64 rng(11);
  for (const char* label : {"A2", "B2", "G2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    auto b = q.verma_basis();
    for (int it = 0; it < 6; ++it) {
      UElement x = random_element(q, b, rng, 0, b->size(), true, 2, 2);
      UElement y = random_element(q, b, rng, 0, b->size(), true, 2, 2);
      UElement z = random_element(q, b, rng, 0, b->size(), true, 2, 1);
      CHECK(q.multiply(q.multiply(x, y), z) == q.multiply(x, q.multiply(y, z)));
    }
  }
}

TEST_CASE("multiplication agrees with the Lie bracket") {
  auto rs = RootSystem::from_label("B2");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto b = q.verma_basis();
  for (int a = 0; a < 2 * g.num_roots(); ++a) {
    for (int c = 0; c < 2 * g.num_roots(); ++c) {
      UElement x = q.generator(b, a), y = q.generator(b, c);
      LieElement br = bracket(g, root_vector(g, a), root_vector(g, c));
      CHECK(q.multiply(x, y) - q.multiply(y, x) == q.from_lie(b, br));
    }
  }
}

TEST_CASE("twisted bases give the same algebra") {
  std::mt19937_64 rng(5);
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  auto ord = default_normal_ordering(rs);
  for (int k = 1; k <= 4; ++k) {
    auto t = q.twisted_basis(ord, k);
    UElement x = random_element(q, q.verma_basis(), rng, 0, 6, true);
    UElement y = random_element(q, q.verma_basis(), rng, 0, 6, true);
    CHECK(q.rebase(q.multiply(x, y), t) == q.multiply(q.rebase(x, t), q.rebase(y, t)));
    CHECK(q.rebase(q.rebase(x, t), q.verma_basis()) == x);
  }
}

TEST_CASE("module action on V") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto E = root_vector(g, g.positive(0)), F = root_vector(g, g.negative(0));
  UElement v0 = q.v0();
  CHECK(q.act(E, v0).is_zero());
  CHECK(q.act(E, q.act(F, v0)) == q.scalar(q.verma_basis(), LocRat::variable(q.ring(), 0)));

  std::mt19937_64 rng(3);
  for (const char* label : {"A2", "B2"}) {
    auto rs2 = RootSystem::from_label(label);
    QuantumContext q2(rs2);
    const auto& g2 = q2.lie();
    for (int it = 0; it < 5; ++it) {
      UElement v = random_verma(q2, rng);
      for (int a = 0; a < rs2.size(); ++a) {
        UElement w = v;
        int n = 0;
        while (!w.is_zero() && n < 40) {
          w = q2.act_generator(g2.positive(a), w);
          ++n;
        }
        CHECK(w.is_zero());
      }
    }
  }
}

TEST_CASE("sl2 p_alpha(t)") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  UElement v0 = q.v0();
  UElement Fv0 = q.act(root_vector(g, g.negative(0)), v0);
  CHECK(q.p_alpha_t(0, 1, v0) == v0);
  CHECK(q.p_alpha_t(0, 1, Fv0).is_zero());
  CHECK_FALSE(q.p_alpha_t(0, 0, Fv0).is_zero());
  UElement phi = q.scalar(q.verma_basis(), LocRat::inverse_factor(q.ring(), 0, 3));
  CHECK(q.p_alpha_t(0, 5, phi) == phi);
  CHECK_THROWS_AS(q.p_alpha_t(0, make_rational(1, 2), Fv0), InputError);
}

TEST_CASE("extremal projector keeps the F-degree zero part") {
  std::mt19937_64 rng(17);
  for (const char* label : {"A1", "A2", "B2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    const auto& g = q.lie();
    auto ord = default_normal_ordering(rs);
    for (int it = 0; it < 6; ++it) {
      UElement v = random_verma(q, rng);
      UElement pv = q.extremal_projector(v, ord);
      CHECK(pv == f_degree_zero(v));
      CHECK(q.extremal_projector(pv, ord) == pv);
      for (int i = 0; i < rs.rank(); ++i) CHECK(q.act_generator(g.positive(rs.simple_index(i)), pv).is_zero());
      for (int b = 0; b < rs.size(); ++b)
        CHECK(q.extremal_projector(q.act_generator(g.negative(b), v), ord).is_zero());
      LieElement hx = LieElement::basis(g.cartan(it % rs.rank()), 1);
      CHECK(q.act(hx, pv) == q.extremal_projector(q.act(hx, v), ord));
    }
  }
}

TEST_CASE("extremal projector does not depend on the normal ordering") {
  std::mt19937_64 rng(23);
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  auto orders = enumerate_normal_orderings(rs);
  REQUIRE(orders.size() == 2);
  auto other = PbwBasis::verma(q.lie(), orders[1]);
  for (int it = 0; it < 5; ++it) {
    UElement v = random_verma(q, rng);
    UElement a = q.extremal_projector(v, orders[0]);
    UElement b = q.rebase(q.extremal_projector(q.rebase(v, other), orders[1]), q.verma_basis());
    CHECK(a == b);
  }
}

TEST_CASE("ad e and q'_alpha in sl2") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto b = q.verma_basis();
  UElement one = q.one(b);
  UElement h = q.scalar(b, LocRat::variable(q.ring(), 0));
  UElement E = q.generator(b, g.positive(0)), F = q.generator(b, g.negative(0));
  CHECK(q.ad_e(0, one).is_zero());
  CHECK(q.ad_e(0, h) == E.scaled(LocRat(-2L)));
  CHECK(q.zhelobenko_q_alpha(0, one) == one);
  UElement expected = h + q.right_scalar(q.multiply(E, F), LocRat::inverse_factor(q.ring(), 0)).scaled(LocRat(2L));
  CHECK(q.zhelobenko_q_alpha(0, h) == expected);
  UElement hinv = q.scalar(b, LocRat::inverse_factor(q.ring(), 0));
  CHECK_THROWS_AS(q.zhelobenko_q_alpha(0, hinv, 10), EngineError);
}

TEST_CASE("ad e is a derivation") {
  std::mt19937_64 rng(29);
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  auto b = q.verma_basis();
  for (int it = 0; it < 5; ++it) {
    UElement x = random_element(q, b, rng, 0, 6, true, 2, 2);
    UElement y = random_element(q, b, rng, 0, 6, true, 2, 2);
    for (int a = 0; a < 3; ++a)
      CHECK(q.ad_e(a, q.multiply(x, y)) == q.multiply(q.ad_e(a, x), y) + q.multiply(x, q.ad_e(a, y)));
  }
}

TEST_CASE("sl2 q_w closed forms") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  auto ord = default_normal_ordering(rs);
  auto t = q.twisted_basis(ord, 1);
  UElement v0w = q.one(t);
  CHECK(q.zhelobenko_qw(ord, 1, v0w) == q.v0());
  UElement hv = q.scalar(t, LocRat::variable(q.ring(), 0));
  CHECK(q.zhelobenko_qw(ord, 1, hv) == q.scalar(q.verma_basis(), LocRat::factor(q.ring(), 0, 2)));
  CHECK(q.zhelobenko_qw(ord, 1, q.generator(t, g.positive(0))).is_zero());
  UElement h2 = q.scalar(t, LocRat::variable(q.ring(), 0).pow(2));
  CHECK(q.zhelobenko_qw(ord, 1, h2) == q.scalar(q.verma_basis(), LocRat::factor(q.ring(), 0, 2).pow(2)));
  CHECK(q.zhelobenko_qw(ord, 2, q.v0()) == q.v0());
}

namespace {

// Checks image, kernel and representative independence of q_w for one (ordering, k).
void check_qw(const QuantumContext& q, const NormalOrdering& ord, int k, std::mt19937_64& rng, int samples) {
  const RootSystem& rs = q.roots();
  const auto& g = q.lie();
  const int n = rs.size();
  auto t = q.twisted_basis(ord, k);
  for (int it = 0; it < samples; ++it) {
    UElement x = random_element(q, t, rng, 0, n, false, 2, 2);
    UElement y = q.zhelobenko_qw(ord, k, x);
    for (int j = k; j <= n; ++j) CHECK(q.act_generator(g.positive(ord.at(j - 1)), y).is_zero());
    for (int j = k; j <= n; ++j) {
      UElement ex = q.act_generator(g.positive(ord.at(j - 1)), x);
      CHECK(q.zhelobenko_qw(ord, k, ex).is_zero());
    }
    // Representative x + u * e, e in n^w.
    std::uniform_int_distribution<int> ideal(n, 2 * n - 1);
    UElement u = random_element(q, t, rng, 0, 2 * n, false, 2, 1);
    UElement pert = x + q.multiply(u, q.generator(t, t->symbol_at(ideal(rng))));
    CHECK(q.zhelobenko_qw(ord, k, pert) == y);
  }
}

}  // namespace

TEST_CASE("q_w image, kernel and representative independence") {
  std::mt19937_64 rng(31);
  for (const char* label : {"A1", "A2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    for (const auto& ord : enumerate_normal_orderings(rs))
      for (int k = 1; k <= rs.size(); ++k) check_qw(q, ord, k, rng, 3);
  }
}

TEST_CASE("q_w for w0 does not depend on the normal ordering") {
  std::mt19937_64 rng(37);
  auto rs = RootSystem::from_label("A2");
  QuantumContext q(rs);
  std::vector<int> w1{0, 1, 0}, w2{1, 0, 1};
  auto o1 = normal_ordering_from_reduced_word(rs, w1), o2 = normal_ordering_from_reduced_word(rs, w2);
  auto t1 = q.twisted_basis(o1, 1), t2 = q.twisted_basis(o2, 1);
  for (int it = 0; it < 5; ++it) {
    UElement x = random_element(q, t1, rng, 0, 3, false, 3, 2);
    UElement a = q.zhelobenko_qw(o1, 1, x);
    UElement b = q.zhelobenko_qw(o2, 1, q.quotient(q.rebase(x, t2)));
    CHECK(a == b);
  }
}

TEST_CASE("printing") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  const auto& g = q.lie();
  UElement Fv = q.act(root_vector(g, g.negative(0)), q.v0());
  CHECK(q.to_string(Fv, true) == "F[1] * v0");
  UElement hv = Fv.scaled(LocRat::variable(q.ring(), 0));
  CHECK(q.to_string(hv, true) == "F[1] * (h[1] - 2) * v0");
  CHECK(q.to_string(q.v0(), true) == "v0");
  CHECK(q.to_string(UElement(q.verma_basis()), true) == "0");
}
