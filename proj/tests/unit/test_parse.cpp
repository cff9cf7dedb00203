#include "doctest.h"
#include "lie/parse.hpp"

#include <random>

using namespace lie;

namespace {

Rational rand_q(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("Lie elements") {
  auto rs = RootSystem::from_label("A1");
  ChevalleyBasis g(rs);
  LieElement y = parse_lie(g, "h:[2] + 3*e[1]");
  CHECK(y.coeff(g.cartan(0)) == 1);
  CHECK(y.coeff(g.positive(0)) == 3);
  CHECK(parse_lie(g, "3/2*e[1] - e[-1]").coeff(g.negative(0)) == -1);
  CHECK(parse_lie(g, "3/2*e[1]").coeff(g.positive(0)) == make_rational(3, 2));
  CHECK(parse_lie(g, "(e[1] + h[1])/2").coeff(g.cartan(0)) == make_rational(1, 2));

  auto b2 = RootSystem::from_label("B2");
  ChevalleyBasis gb(b2);
  // h[v] of a root is its coroot.
  auto theta = *b2.find_positive({1, 2});
  LieElement h = parse_lie(gb, "h[" + to_string(b2.root(theta)).substr(1));
  for (int i = 0; i < 2; ++i) CHECK(h.coeff(gb.cartan(i)) == b2.coroot(theta)[i]);
  CHECK(parse_lie(gb, "e[2]").coeff(gb.positive(b2.simple_index(1))) == 1);
}

TEST_CASE("Lie element round trip") {
  std::mt19937_64 rng(2);
  for (const char* label : {"A2", "B2", "G2"}) {
    auto rs = RootSystem::from_label(label);
    ChevalleyBasis g(rs);
    std::uniform_int_distribution<int> sym(0, g.dim() - 1);
    for (int it = 0; it < 30; ++it) {
      LieElement x;
      for (int t = 0; t < 4; ++t) x.add(sym(rng), rand_q(rng));
      CHECK(parse_lie(g, to_string(g, x)) == x);
    }
  }
}

TEST_CASE("parse errors carry a column") {
  auto rs = RootSystem::from_label("A2");
  ChevalleyBasis g(rs);
  auto column_of = [&](const char* text) -> std::size_t {
    try {
      parse_lie(g, text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("e[1,0] + ") == 10);
  CHECK(column_of("e[1,0] $ 2") == 8);
  CHECK(column_of("e[2,0]") == 1);
  CHECK(column_of("e[1,0,0]") == 1);
  CHECK(column_of("e[1,0] * e[0,1]") == 8);
  CHECK(column_of("x[1,0]") == 1);
  CHECK(column_of("(e[1,0]") == 8);
  CHECK_THROWS_AS(parse_lie(g, ""), ParseError);
  CHECK_THROWS_AS(parse_lie(g, "h:[1]"), InputError);
}

TEST_CASE("functions on g") {
  auto rs = RootSystem::from_label("A2");
  ClassicalContext ctx(rs);
  PolyFunc f = parse_poly(ctx, "E[-1,0]^2*E[0,-1] + H[1,0]/H[1,1]");
  CHECK(f == ctx.e_hat({-1, 0}).pow(2) * ctx.e_hat({0, -1}) +
                 PolyFunc(LocRat::variable(ctx.ring(), 0) * LocRat::inverse_factor(ctx.ring(), 2)));
  CHECK(parse_poly(ctx, "inv(H[1])") == PolyFunc(LocRat::inverse_factor(ctx.ring(), 0)));
  CHECK(parse_poly(ctx, "H[1,1]^-2") == PolyFunc(LocRat::inverse_factor(ctx.ring(), 2, 0, 2)));
  CHECK_THROWS_AS(parse_poly(ctx, "1/(H[1,0] + 1)"), ParseError);
  CHECK_THROWS_AS(parse_poly(ctx, "1/E[1,0]"), ParseError);
  CHECK_THROWS_AS(parse_poly(ctx, "h[1,0]"), ParseError);
}

TEST_CASE("function round trip") {
  std::mt19937_64 rng(3);
  for (const char* label : {"A1", "A2", "B2"}) {
    auto rs = RootSystem::from_label(label);
    ClassicalContext ctx(rs);
    const auto& g = ctx.lie();
    std::uniform_int_distribution<int> sym(0, 2 * g.num_roots() - 1), root(0, rs.size() - 1), var(0, rs.rank() - 1),
        deg(0, 3), coin(0, 1);
    for (int it = 0; it < 30; ++it) {
      PolyFunc f;
      for (int t = 0; t < 3; ++t) {
        PolyFunc m(rand_q(rng));
        for (int d = deg(rng); d > 0; --d) m = m * PolyFunc::symbol(sym(rng));
        if (coin(rng)) m = m * (PolyFunc(LocRat::variable(ctx.ring(), var(rng))) + PolyFunc(rand_q(rng)));
        if (coin(rng)) m = m * LocRat::inverse_factor(ctx.ring(), root(rng), 0, 1 + coin(rng));
        f += m;
      }
      CHECK(parse_poly(ctx, ctx.to_string(f)) == f);
    }
  }
}

TEST_CASE("U(g) elements and vectors") {
  auto rs = RootSystem::from_label("A1");
  QuantumContext q(rs);
  auto b = q.verma_basis();
  auto ef = parse_u(q, b, "E[1]*F[1]");
  CHECK_FALSE(ef.is_vector);
  CHECK(q.to_string(ef.value, false) == "h[1] + F[1] * E[1]");
  auto v = parse_u(q, b, "E[1]*F[1]*v0");
  CHECK(v.is_vector);
  CHECK(v.value == q.scalar(b, LocRat::variable(q.ring(), 0)));
  CHECK(parse_u(q, b, "F[1] * (h[1] - 2) * v0").value == parse_u(q, b, "h[1]*F[1]*v0").value);
  CHECK_THROWS_AS(parse_u(q, b, "v0*F[1]"), ParseError);
  CHECK_THROWS_AS(parse_u(q, b, "F[-1]"), ParseError);
  CHECK_THROWS_AS(parse_u(q, b, "F[1] + v0"), ParseError);

  auto a2 = RootSystem::from_label("A2");
  QuantumContext q2(a2);
  auto v2 = parse_u(q2, q2.verma_basis(), "F[1,1]^2 * (h[1]+1)/(h[1,0]+2) * E[1,0]");
  CHECK(v2.value.degree() == 3);
}

TEST_CASE("U(g) round trip") {
  std::mt19937_64 rng(4);
  for (const char* label : {"A1", "A2", "B2"}) {
    auto rs = RootSystem::from_label(label);
    QuantumContext q(rs);
    auto ord = default_normal_ordering(rs);
    for (int k = 1; k <= rs.size() + 1; ++k) {
      auto basis = k == rs.size() + 1 ? std::shared_ptr<const PbwBasis>(q.verma_basis())
                                      : std::shared_ptr<const PbwBasis>(q.twisted_basis(ord, k));
      std::uniform_int_distribution<int> pos(0, basis->size() - 1), deg(0, 3), coin(0, 1), var(0, rs.rank() - 1),
          root(0, rs.size() - 1), shift(-3, 3);
      for (int it = 0; it < 8; ++it) {
        UElement u(basis);
        for (int t = 0; t < 3; ++t) {
          UElement::Mono m(basis->size(), 0);
          for (int d = deg(rng); d > 0; --d) ++m[pos(rng)];
          LocRat c(q.ring(), rand_q(rng));
          if (coin(rng)) c += LocRat::variable(q.ring(), var(rng));
          if (coin(rng)) c *= LocRat::inverse_factor(q.ring(), root(rng), shift(rng));
          u.add_term(m, c);
        }
        CHECK(parse_u(q, basis, q.to_string(u, false)).value == u);
        UElement vec = q.quotient(u);
        auto back = parse_u(q, basis, q.to_string(vec, true));
        CHECK(back.is_vector == !vec.is_zero());
        CHECK(back.value == vec);
      }
    }
  }
}
