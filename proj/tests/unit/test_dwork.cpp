#include <doctest.h>

#include "dkz/dwork.hpp"

using namespace dkz;

namespace {

// ((t - z_1) ... (t - z_n))^N as a factored polynomial.
FactoredPoly master(int n, std::uint64_t N) {
  return FactoredPoly::symmetric_product({1, n}, LaurentPoly::parse("t1 + -1 * z1", kFactorLayout)).power(N);
}

DworkTuple kz_like(std::uint64_t p, int n, std::uint64_t N, int g, int l) {
  DworkTuple t;
  t.p = p;
  t.layout = {1, n};
  t.e.assign(static_cast<std::size_t>(l + 1), 1);
  t.delta.assign(static_cast<std::size_t>(l + 2), interval_index_set(1, g));
  t.lambda.assign(static_cast<std::size_t>(l + 1), master(n, N));
  return t;
}

}  // namespace

TEST_CASE("ghosts: closed forms and residual") {
  const VarLayout l{1, 2};
  auto a = FactoredPoly::from_laurent(LaurentPoly::parse("1 + t1 * z1 + 2 * t1^2 * z2", l));
  auto b = FactoredPoly::from_laurent(LaurentPoly::parse("3 + t1 * z2", l));
  DworkTuple t{5, l, {1}, {interval_index_set(1, 1), interval_index_set(1, 1)}, {a, b}};
  GhostSequence seq(t);
  const LaurentPoly expected = (a * b.power(5) - a * b.sigma_subst(5, 1, SigmaScope::All)).expand();
  CHECK(seq.V(1).expand() == expected);
  CHECK(seq.residual(1).is_exact_zero());

  auto one = FactoredPoly::constant(l, 1);
  DworkTuple trivial{5, l, {1, 1}, {interval_index_set(1, 1), interval_index_set(1, 1), interval_index_set(1, 1)},
                     {one, one, one}};
  GhostSequence ts(trivial);
  CHECK(ts.V(0).expand() == LaurentPoly::constant(l, 1));
  CHECK(ts.V(1).is_exact_zero());
  CHECK(ts.V(2).is_exact_zero());
}

TEST_CASE("tuple validation") {
  auto t = kz_like(7, 4, 2, 1, 2);
  CHECK_NOTHROW(t.validate());
  CHECK(t.k(2) == 2);
  CHECK(t.max_level() == 2);
  auto bad = t;
  bad.e.push_back(1);
  bad.e.push_back(1);
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = t;
  bad.p = 9;
  CHECK_THROWS_AS(bad.validate(), InvalidParams);
}

TEST_CASE("Hasse-Witt oracles") {
  const VarLayout l{1, 4};
  auto phi = master(4, 2);
  auto hw = hasse_witt(7, 1, interval_index_set(1, 1), interval_index_set(1, 1), phi);
  CHECK(hw.entries(0, 0) ==
        LaurentPoly::parse("z1^2 + z2^2 + z3^2 + z4^2 + 4 * z1 * z2 + 4 * z1 * z3 + 4 * z1 * z4 + 4 * z2 * z3 + "
                           "4 * z2 * z4 + 4 * z3 * z4",
                           l));
  auto hw2 = hasse_witt(13, 1, interval_index_set(1, 2), interval_index_set(1, 2), master(7, 4));
  CHECK(hw2.entries(0, 0).z_degree_if_homogeneous() == 16);
  CHECK(hw2.entries(0, 1).z_degree_if_homogeneous() == 3);
  CHECK(hw2.entries(1, 0).z_degree_if_homogeneous() == 17);
  CHECK(hw2.entries(1, 1).z_degree_if_homogeneous() == 4);
  // Same through the expanded polynomial.
  auto hw3 = hasse_witt(7, 1, interval_index_set(1, 1), interval_index_set(1, 1), phi.expand());
  CHECK(hw3.entries(0, 0) == hw.entries(0, 0));
}

TEST_CASE("admissibility") {
  const std::vector<IndexSet> d1(3, interval_index_set(1, 1));
  CHECK(check_admissible(7, d1, {1, 1}, {LatticePolytopeT::interval(0, 8), LatticePolytopeT::interval(0, 8)}).pass);
  auto bad = check_admissible(7, d1, {1, 1}, {LatticePolytopeT::interval(0, 15), LatticePolytopeT::interval(0, 15)});
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.witness->find("point 14") == 0);

  const std::vector<IndexSet> d2(4, interval_index_set(1, 2));
  std::vector<LatticePolytopeT> n2(3, LatticePolytopeT::interval(0, 28));
  CHECK(check_admissible(13, d2, {1, 1, 1}, n2).pass);

  const std::vector<IndexSet> d5(4, interval_index_set(1, 4));
  std::vector<LatticePolytopeT> n5(3, LatticePolytopeT::interval(0, 104));
  CHECK(check_admissible(5, d5, {2, 2, 2}, n5).pass);
  n5[0] = LatticePolytopeT::interval(0, 104 + 25);
  CHECK_FALSE(check_admissible(5, d5, {2, 2, 2}, n5).pass);

  // r = 2 with explicit point sets
  LatticePolytopeT box;
  box.r = 2;
  box.lo = {0, 0};
  box.hi = {1, 1};
  box.points = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const std::vector<IndexSet> dr(2, IndexSet{{1, 1}});
  CHECK(check_admissible(3, dr, {1}, {box}).pass);
}

TEST_CASE("Dwork checks, (7,3,1) symbolic") {
  DworkVerifier ver(kz_like(7, 4, 2, 1, 2));
  for (int s = 0; s <= 2; ++s) {
    CHECK(ver.ghost_divisibility(s).pass);
    CHECK(ver.ghost_sequence().residual(s).is_exact_zero());
    CHECK(ver.newton_inclusion(s).pass);
    CHECK(ver.hw_factorization_identity(s).pass);
    CHECK(ver.mod_p_factorization(s).pass);
  }
  for (int s = 1; s <= 2; ++s) {
    CHECK(ver.ratio_congruence(s).pass);
    CHECK(ver.det_congruence(s).pass);
  }
  auto r = ver.derivation_congruence(1, 1, 0);
  CHECK(r.pass);
  CHECK(*r.claimed_exponent == 2);
  CHECK(ver.second_derivation_congruence(1, 0, 1).pass);
}

TEST_CASE("Dwork checks, evaluation mode") {
  VerifyOptions opts;
  opts.mode = Mode::Evaluation;
  opts.points = 4;
  DworkVerifier ver(kz_like(7, 4, 2, 1, 2), opts);
  CHECK(ver.ghost_divisibility(2).pass);
  CHECK(ver.hw_factorization_identity(2).pass);
  CHECK(ver.mod_p_factorization(2).pass);
  CHECK(ver.ratio_congruence(2).pass);
  CHECK(ver.det_congruence(2).pass);
  for (int v = 0; v < 4; ++v) {
    CHECK(ver.derivation_congruence(2, 0, v).pass);
    CHECK(ver.derivation_congruence(2, 1, v).pass);
  }
  CHECK(ver.second_derivation_congruence(2, 1, 1).pass);
  CHECK(ver.second_derivation_congruence(2, 0, 3).pass);

}
