#include <doctest.h>

#include "dkz/padic_eval.hpp"

using namespace dkz;

TEST_CASE("domain classification") {
  auto P = make_params(7, 3, 1);
  UnramifiedRing R(ModulusContext(7, 3), 1);
  auto pt = [&](std::initializer_list<int> xs) {
    std::vector<UnramifiedElement> a;
    for (int x : xs) a.push_back(R.from_int(x));
    return a;
  };
  auto d = classify_point(P, pt({1, 2, 3, 4}));
  CHECK(d.in_D);
  CHECK(d.in_D_o);
  CHECK_FALSE(classify_point(P, pt({1, 2, 3, 5})).in_D);
  CHECK_FALSE(classify_point(P, pt({1, 2, 8, 4})).in_D_o);
  CHECK_THROWS_AS(require_domain_degree(make_params(13, 3, 2), 1), InvalidParams);
  CHECK_NOTHROW(require_domain_degree(make_params(13, 3, 2), 2));
  CHECK(rank_hypothesis_holds(P, 1));
  CHECK_FALSE(rank_hypothesis_holds(make_params(13, 3, 2), 1));
}

TEST_CASE("point search is deterministic and lands in D^o") {
  auto P = make_params(7, 3, 1);
  UnramifiedRing R(ModulusContext(7, 6), 1);
  auto a = find_domain_points(P, R, 5, 42);
  auto b = find_domain_points(P, R, 5, 42);
  REQUIRE(a.size() == 5);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].in_D_o);
    for (std::size_t i = 0; i < a[k].a.size(); ++i) {
      CHECK(a[k].a[i] == b[k].a[i]);
      CHECK(a[k].a[i].pow(7) == a[k].a[i]);  // Teichmuller
    }
  }
}

TEST_CASE("convergence at (7,3,1)") {
  auto P = make_params(7, 3, 1);
  UnramifiedRing R(ModulusContext(7, 6), 1);
  auto pts = find_domain_points(P, R, 3, 7);
  for (const auto& d : pts) {
    PointPipeline pp(P, d);
    auto B = ratio_sequence(pp, 4);
    CHECK(B.pass);
    CHECK(B.certified_precision == 3);
    CHECK(B.matrices[0](0, 0) == pp.at().A(1)(0, 0));
    auto I = solution_bundle_sequence(pp, 4);
    CHECK(I.pass);
    CHECK(I.certified_precision == 3);
    for (int i = 0; i < P.n; ++i) {
      auto [LI, LA] = derivative_bundle_sequence(pp, i, 4);
      CHECK(LI.pass);
      CHECK(LA.pass);
    }
    for (int s = 1; s <= 2; ++s) {
      auto g = check_gaudin_relation(pp, s);
      CHECK(g.pass);
      CHECK(*g.claimed_exponent == s);
      CHECK(check_connection_identity(pp, s, 0, 2).pass);
      CHECK(check_connection_identity(pp, s, 1, 1).pass);
    }
    CHECK(check_connection_identity(pp, 0, 0, 1).pass);
  }
  CHECK(rank_check(P, pts).report.pass);
}

TEST_CASE("convergence at (13,3,2), m = 2") {
  auto P = make_params(13, 3, 2);
  UnramifiedRing R(ModulusContext(13, 5), 2);
  auto pts = find_domain_points(P, R, 2, 3);
  for (const auto& d : pts) {
    PointPipeline pp(P, d);
    auto B = ratio_sequence(pp, 4);
    CHECK(B.pass);
    auto I = solution_bundle_sequence(pp, 4);
    CHECK(I.pass);
    CHECK(check_gaudin_relation(pp, 2).pass);
  }
  CHECK(rank_check(P, pts).report.pass);
}
