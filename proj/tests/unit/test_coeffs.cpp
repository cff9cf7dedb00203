#include "doctest.h"
#include "lie/coeffs.hpp"

#include <random>

using namespace lie;

namespace {

// Dense bivariate polynomial oracle: coefficient grid indexed by exponents.
using Dense = std::vector<std::vector<Rational>>;

Dense dense_zero(int deg) { return Dense(deg + 1, std::vector<Rational>(deg + 1, Rational(0))); }

Dense dense_add(const Dense& a, const Dense& b) {
  Dense r = dense_zero(static_cast<int>(std::max(a.size(), b.size())) - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] += a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i][j] += b[i][j];
  return r;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r = dense_zero(static_cast<int>(a.size() + b.size()) - 2);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l) r[i + k][j + l] += a[i][j] * b[k][l];
  return r;
}

CartanPoly from_dense(const Dense& d) {
  CartanPoly p(2);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      CartanMonomial m;
      m.exp[0] = static_cast<std::uint16_t>(i);
      m.exp[1] = static_cast<std::uint16_t>(j);
      p.add_term(m, d[i][j]);
    }
  return p;
}

Rational rand_q(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return make_rational(num(rng), den(rng));
}

Dense random_dense(std::mt19937_64& rng, int deg) {
  Dense d = dense_zero(deg);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) d[i][j] = rand_q(rng);
  return d;
}

LocRat random_locrat(const CoefficientRing& ring, std::mt19937_64& rng) {
  LocRat f(ring, from_dense(random_dense(rng, 2)));
  std::uniform_int_distribution<int> root(0, ring.roots().size() - 1), shift(-2, 2), count(0, 2);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    long m = ring.allows_shift() ? shift(rng) : 0;
    f *= LocRat::inverse_factor(ring, root(rng), m);
  }
  return f;
}

std::vector<Rational> random_point(std::mt19937_64& rng) { return {rand_q(rng) + Rational(1, 97), rand_q(rng) + Rational(1, 89)}; }

}  // namespace

TEST_CASE("polynomial arithmetic matches the dense oracle") {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) {
    Dense a = random_dense(rng, 3), b = random_dense(rng, 2);
    CHECK(from_dense(a) + from_dense(b) == from_dense(dense_add(a, b)));
    CHECK(from_dense(a) * from_dense(b) == from_dense(dense_mul(a, b)));
  }
}

TEST_CASE("basic localized arithmetic") {
  auto rs = RootSystem::from_label("A2");
  CoefficientRing q(rs, RingKind::kQuantum);
  int a1 = rs.simple_index(0), a2 = rs.simple_index(1);
  LocRat h1 = LocRat::factor(q, a1), h2 = LocRat::factor(q, a2);
  CHECK(h1 * LocRat::inverse_factor(q, a1) == LocRat(q, Rational(1)));
  LocRat sum = LocRat::inverse_factor(q, a1) + LocRat::inverse_factor(q, a2);
  CHECK(sum == (h1 + h2) / (h1 * h2));
  CHECK(sum.denominator().size() == 2);
  // (h+2) h - (h+1)^2 = -1
  LocRat h = LocRat::factor(q, a1);
  CHECK((h + LocRat(2)) * h - (h + LocRat(1)).pow(2) == LocRat(q, Rational(-1)));
  // h1 + h2 is the coroot of the highest root in A2.
  LocRat inv = LocRat(1) / (h1 + h2 + LocRat(3));
  CHECK(inv.denominator().begin()->first.second == 3);
  CHECK_THROWS_AS(LocRat(1) / LocRat(q, Rational(0)), EngineError);
  CHECK_THROWS_AS(LocRat(1) / (h1 + LocRat(Rational(1, 2))), EngineError);
  CHECK_THROWS_AS(LocRat(1) / (h1 * h1 + LocRat(1)), EngineError);
  CHECK_THROWS_AS(LocRat(1) / (h1 + h2 + h2), EngineError);

  CoefficientRing c(rs, RingKind::kClassical);
  LocRat x = LocRat::factor(c, a1);
  CHECK_THROWS_AS(LocRat(1) / (x + LocRat(1)), EngineError);
  CHECK_THROWS_AS(LocRat::factor(c, a1, 1), InputError);
  CHECK((LocRat(1) / (LocRat::variable(c, 0) * LocRat::variable(c, 1) * Rational(3))).denominator().size() == 2);
}

TEST_CASE("eval") {
  auto a1 = RootSystem::from_label("A1");
  CoefficientRing c(a1, RingKind::kClassical);
  CHECK(LocRat::inverse_factor(c, 0).eval({Rational(2)}) == Rational(1, 2));
  CHECK_THROWS_AS(LocRat::inverse_factor(c, 0).eval({Rational(0)}), EngineError);

  auto rs = RootSystem::from_label("A2");
  CoefficientRing q(rs, RingKind::kQuantum);
  LocRat p = LocRat::variable(q, 0) * LocRat::variable(q, 1);
  CHECK(p.eval({Rational(1), Rational(1)}) == 1);

  std::mt19937_64 rng(2);
  for (auto kind : {RingKind::kClassical, RingKind::kQuantum}) {
    CoefficientRing ring(rs, kind);
    for (int it = 0; it < 100; ++it) {
      LocRat f = random_locrat(ring, rng), g = random_locrat(ring, rng);
      auto pt = random_point(rng);
      Rational fv, gv;
      try {
        fv = f.eval(pt);
        gv = g.eval(pt);
      } catch (const EngineError&) {
        continue;
      }
      CHECK((f + g).eval(pt) == fv + gv);
      CHECK((f - g).eval(pt) == fv - gv);
      CHECK((f * g).eval(pt) == fv * gv);
      CHECK((f - f).is_zero());
      CHECK(((f + g) - g) == f);
      if (g.numerator().is_constant() && !g.is_zero()) CHECK((f / g).eval(pt) == fv / gv);
    }
  }
}

TEST_CASE("weight shift") {
  auto a1 = RootSystem::from_label("A1");
  CoefficientRing q1(a1, RingKind::kQuantum);
  LocRat h = LocRat::variable(q1, 0);
  CHECK(h.weight_shift({0}) == h);
  CHECK(h.weight_shift({-1}) == h - LocRat(2));
  CHECK(LocRat::inverse_factor(q1, 0, 1).weight_shift({1}) == LocRat::inverse_factor(q1, 0, 3));

  auto rs = RootSystem::from_label("B2");
  CoefficientRing q(rs, RingKind::kQuantum);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> k(-2, 2);
  for (int it = 0; it < 60; ++it) {
    LocRat f = random_locrat(q, rng), g = random_locrat(q, rng);
    IntVec lam{k(rng), k(rng)}, mu{k(rng), k(rng)};
    CHECK((f * g).weight_shift(lam) == f.weight_shift(lam) * g.weight_shift(lam));
    CHECK((f + g).weight_shift(lam) == f.weight_shift(lam) + g.weight_shift(lam));
    CHECK(f.weight_shift(lam).weight_shift(mu) == f.weight_shift(add(lam, mu)));
    auto pt = random_point(rng);
    try {
      // f(h + lambda(h)) evaluated at a point equals f at the shifted point.
      std::vector<Rational> shifted{pt[0] + rs.pairing_simple(lam, 0), pt[1] + rs.pairing_simple(lam, 1)};
      Rational expect = f.eval(shifted);
      CHECK(f.weight_shift(lam).eval(pt) == expect);
    } catch (const EngineError&) {
    }
  }
  CoefficientRing c(rs, RingKind::kClassical);
  CHECK_THROWS_AS(LocRat::variable(c, 0).weight_shift({1, 0}), InputError);
}

TEST_CASE("directional derivative obeys the quotient rule") {
  auto rs = RootSystem::from_label("A1");
  CoefficientRing c(rs, RingKind::kClassical);
  // d/dx (1/x) = -1/x^2
  auto d = LocRat::inverse_factor(c, 0).directional_derivative({Rational(1)});
  CHECK(d == -LocRat::inverse_factor(c, 0, 0, 2));
  auto a2 = RootSystem::from_label("A2");
  CoefficientRing c2(a2, RingKind::kClassical);
  std::mt19937_64 rng(8);
  for (int it = 0; it < 40; ++it) {
    LocRat f = random_locrat(c2, rng), g = random_locrat(c2, rng);
    std::vector<Rational> v{rand_q(rng), rand_q(rng)};
    CHECK((f * g).directional_derivative(v) == f.directional_derivative(v) * g + f * g.directional_derivative(v));
  }
}

TEST_CASE("printing") {
  auto rs = RootSystem::from_label("A2");
  CoefficientRing q(rs, RingKind::kQuantum);
  LocRat f = (LocRat::variable(q, 0) + LocRat::variable(q, 1) * Rational(2)) /
             (LocRat::named(q, {1, 1}) * (LocRat::variable(q, 0) + LocRat(3)));
  CHECK(f.to_string() == "(h[1,0] + 2*h[0,1])/((h[1,0]+3)*h[1,1])");
  CoefficientRing c(rs, RingKind::kClassical);
  CHECK((LocRat(1) / LocRat::named(c, {1, 1})).to_string() == "1/H[1,1]");
}
