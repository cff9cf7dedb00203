#include "doctest.h"
#include "lie/roots.hpp"

#include <algorithm>
#include <set>

using namespace lie;

namespace {

// Naive closure: start from simple roots, add simple roots while the
// alpha_i-string condition allows it, over integer vectors of bounded height.
std::set<IntVec> closure_oracle(const IntMatrix& a) {
  const int r = static_cast<int>(a.size());
  std::set<IntVec> roots;
  std::vector<IntVec> frontier;
  for (int i = 0; i < r; ++i) {
    IntVec v(r, 0);
    v[i] = 1;
    roots.insert(v);
    frontier.push_back(v);
  }
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& v : frontier) {
      for (int i = 0; i < r; ++i) {
        // <v, alpha_i^vee>
        int pair = 0;
        for (int j = 0; j < r; ++j) pair += a[i][j] * v[j];
        // p = how far v - k alpha_i stays a root (or zero)
        int p = 0;
        IntVec down = v;
        for (;;) {
          down[i] -= 1;
          if (roots.count(down)) ++p;
          else break;
        }
        if (p - pair > 0) {
          IntVec up = v;
          up[i] += 1;
          if (roots.insert(up).second) next.push_back(up);
        }
      }
    }
    frontier = std::move(next);
  }
  return roots;
}

IntVec v2(int a, int b) { return {a, b}; }

}  // namespace

TEST_CASE("root counts match the closure oracle") {
  for (auto [label, n] : std::vector<std::pair<std::string, int>>{{"A1", 1}, {"A2", 3}, {"B2", 4}, {"A3", 6}, {"G2", 6},
                                                                   {"C3", 9}, {"B3", 9}, {"D4", 12}, {"F4", 24}}) {
    auto rs = RootSystem::from_label(label);
    CHECK(rs.size() == n);
    auto oracle = closure_oracle(rs.cartan());
    std::set<IntVec> got(rs.positive_roots().begin(), rs.positive_roots().end());
    CHECK(got == oracle);
  }
}

TEST_CASE("invalid Cartan matrices are rejected") {
  CHECK_THROWS_AS(RootSystem::from_cartan({{2, -1}, {0, 2}}), InputError);
  CHECK_THROWS_AS(RootSystem::from_cartan({{2, -2}, {-2, 2}}), InputError);
  CHECK_THROWS_AS(RootSystem::from_cartan({{1}}), InputError);
  CHECK_THROWS_AS(RootSystem::from_label("Z9"), InputError);
}

TEST_CASE("coroots pair to two and rho is one on simple coroots") {
  for (auto label : {"A2", "B2", "G2", "A3", "C3"}) {
    auto rs = RootSystem::from_label(label);
    for (int b = 0; b < rs.size(); ++b) CHECK(rs.root_pairing(b, b) == 2);
    for (int i = 0; i < rs.rank(); ++i) CHECK(rs.rho(rs.simple_index(i)) == 1);
  }
}

TEST_CASE("normal ordering validation") {
  auto rs = RootSystem::from_label("A2");
  int a1 = *rs.find_positive(v2(1, 0)), a2 = *rs.find_positive(v2(0, 1)), th = *rs.find_positive(v2(1, 1));
  std::vector<int> good{a1, th, a2}, bad{a1, a2, th};
  CHECK(validate_normal_ordering(rs, good));
  CHECK_FALSE(validate_normal_ordering(rs, bad));
  auto a1rs = RootSystem::from_label("A1");
  std::vector<int> single{0};
  CHECK(validate_normal_ordering(a1rs, single));
}

TEST_CASE("orderings from reduced words") {
  auto rs = RootSystem::from_label("A2");
  std::vector<int> w212{1, 0, 1}, w121{0, 1, 0};
  auto o1 = normal_ordering_from_reduced_word(rs, w212);
  CHECK(rs.root(o1.at(0)) == v2(0, 1));
  CHECK(rs.root(o1.at(1)) == v2(1, 1));
  CHECK(rs.root(o1.at(2)) == v2(1, 0));
  auto o2 = normal_ordering_from_reduced_word(rs, w121);
  CHECK(rs.root(o2.at(0)) == v2(1, 0));
  CHECK(rs.root(o2.at(2)) == v2(0, 1));
  std::vector<int> nonreduced{0, 0, 1};
  CHECK_THROWS_AS(normal_ordering_from_reduced_word(rs, nonreduced), InputError);
  CHECK(enumerate_normal_orderings(rs).size() == 2);
  CHECK(enumerate_normal_orderings(RootSystem::from_label("B2")).size() == 2);
  CHECK(enumerate_normal_orderings(RootSystem::from_label("A3")).size() == 16);
  for (const auto& o : enumerate_normal_orderings(RootSystem::from_label("A3")))
    CHECK(validate_normal_ordering(RootSystem::from_label("A3"), o.sequence()));
}

TEST_CASE("suffix products and inversion sets") {
  auto rs = RootSystem::from_label("A2");
  std::vector<int> w212{1, 0, 1};
  auto o = normal_ordering_from_reduced_word(rs, w212);
  CHECK(weyl_from_suffix(rs, o, 4).is_identity());
  CHECK(weyl_from_suffix(rs, o, 3) == WeylElement::simple_reflection(rs, 0));
  auto w0 = weyl_from_suffix(rs, o, 1);
  for (const auto& r : rs.positive_roots()) CHECK(is_negative(w0.apply(r)));
  CHECK_THROWS_AS(weyl_from_suffix(rs, o, 0), InputError);
  CHECK_THROWS_AS(weyl_from_suffix(rs, o, 5), InputError);

  CHECK(delta_w(rs, WeylElement::identity(2)).empty());
  auto s1 = WeylElement::simple_reflection(rs, 0);
  CHECK(delta_w(rs, s1) == std::vector<int>{rs.simple_index(0)});

  auto adapted = adapted_normal_ordering(rs, s1);
  CHECK(adapted.k == 3);
  CHECK(adapted.ordering == o);

  auto comp = w_complement_roots(rs, s1);
  std::vector<int> expect{*rs.find_positive(v2(0, 1)), *rs.find_positive(v2(1, 1))};
  std::sort(expect.begin(), expect.end());
  CHECK(comp == expect);
}

TEST_CASE("reflections are involutions") {
  auto rs = RootSystem::from_label("G2");
  for (int b = 0; b < rs.size(); ++b) {
    auto s = WeylElement::reflection(rs, b);
    CHECK((s * s).is_identity());
    CHECK(s.apply(rs.root(b)) == negate(rs.root(b)));
  }
  CHECK(weyl_group_elements(rs).size() == 12);
  CHECK(weyl_group_elements(RootSystem::from_label("A3")).size() == 24);
}

TEST_CASE("adapted orderings for every element in rank <= 3") {
  for (auto label : {"A1", "A2", "B2", "G2", "A3", "B3", "C3"}) {
    auto rs = RootSystem::from_label(label);
    for (const auto& w : weyl_group_elements(rs)) {
      auto ad = adapted_normal_ordering(rs, w);
      CHECK(validate_normal_ordering(rs, ad.ordering.sequence()));
      CHECK(weyl_from_suffix(rs, ad.ordering, ad.k) == w);
      std::vector<int> suffix(ad.ordering.sequence().begin() + (ad.k - 1), ad.ordering.sequence().end());
      std::sort(suffix.begin(), suffix.end());
      CHECK(delta_w(rs, w) == suffix);
      CHECK(static_cast<int>(w_complement_roots(rs, w).size()) == rs.size() - weyl_length(rs, w));
    }
  }
}
