#include <doctest.h>

#include <json.hpp>

#include "dkz/kz.hpp"

using namespace dkz;

TEST_CASE("kz parameters") {
  auto a = make_params(7, 3, 1);
  CHECK(a.e == 1);
  CHECK(a.n == 4);
  CHECK(a.N(1) == 2);
  CHECK(a.N(2) == 16);
  CHECK(a.d_phi() == 2);
  CHECK(a.d_M() == 1);
  auto b = make_params(13, 3, 2);
  CHECK(b.e == 1);
  CHECK(b.n == 7);
  CHECK(b.d_phi() == 20);
  CHECK(b.d_M() == 17);
  CHECK(make_params(5, 3, 1).e == 2);
  CHECK_THROWS_AS(make_params(3, 3, 1), InvalidParams);
  CHECK_THROWS_AS(make_params(4, 3, 1), InvalidParams);
  CHECK_THROWS_WITH_AS(make_params(7, 3, 2), "p^e > n fails", InvalidParams);
  CHECK_THROWS_WITH_AS(make_params(11, 3, 4), "p >= n + q - 2 fails", InvalidParams);
}

TEST_CASE("master polynomial and solutions, (7,3,1)") {
  auto P = make_params(7, 3, 1);
  const VarLayout L = P.layout();
  auto phi1 = master_polynomial(P, 1).expanded();
  CHECK(phi1.newton_polytope_t().hi[0] == 8);
  CHECK(phi1.homogeneous_degree() == 8);
  // Phi_2 = Phi_1 * Phi_1^7
  auto phi2 = master_polynomial(P, 2);
  CHECK(phi2.factored.t_bounds().second == 64);
  CHECK((master_polynomial(P, 1).factored * master_polynomial(P, 1).factored.power(7)).coeff_t(40) ==
        phi2.factored.coeff_t(40));

  auto I = hypergeometric_solutions(P, 1).I;
  CHECK(I(0, 0) == LaurentPoly::parse("-1 * z1 + -2 * z2 + -2 * z3 + -2 * z4", L));
  CHECK(I(2, 0) == LaurentPoly::parse("-2 * z1 + -2 * z2 + -1 * z3 + -2 * z4", L));
  auto I2 = hypergeometric_solutions(P, 2).I;
  CHECK(I2(1, 0).homogeneous_degree() == 4 * 16 - 49);

  auto A = hasse_witt_phi(P, 1).entries;
  CHECK(A(0, 0) == LaurentPoly::parse("z1^2 + z2^2 + z3^2 + z4^2 + 4 * z1 * z2 + 4 * z1 * z3 + 4 * z1 * z4 + "
                                      "4 * z2 * z3 + 4 * z2 * z4 + 4 * z3 * z4",
                                      L));
  std::vector<UnramifiedElement> pt;
  UnramifiedRing R(ModulusContext(7, 3), 1);
  for (int x : {1, 2, 3, 4}) pt.push_back(R.from_int(x));
  CHECK(A(0, 0).evaluate(pt) == R.from_int(170));
  KzPoint kp(P, pt);
  CHECK(kp.A(1)(0, 0) == R.from_int(170));
  CHECK(kp.I(1)(0, 0) == R.from_int(-(1 + 4 + 6 + 8)));
}

TEST_CASE("point backend matches symbolic derivatives") {
  auto P = make_params(7, 3, 1);
  UnramifiedRing R(ModulusContext(7, 4), 2);
  auto pts = random_unit_points(R, P.n, 2, 5);
  KzSymbolic sym(P, 0);
  for (const auto& pt : pts) {
    KzPoint kp(P, pt);
    for (int s = 1; s <= 2; ++s)
      for (int j = 0; j < P.n; ++j) {
        CHECK(kp.I_d(s, j)(1, 0) == sym.I_d(s, j)(1, 0).evaluate(pt));
        CHECK(kp.I_d(s, j)(j, 0) == sym.I_d(s, j)(j, 0).evaluate(pt));
        CHECK(kp.A_d(s, j)(0, 0) == sym.A_d(s, j)(0, 0).evaluate(pt));
        CHECK(kp.A_dd(s, j, 2)(0, 0) == sym.A_dd(s, j, 2)(0, 0).evaluate(pt));
      }
  }
}

TEST_CASE("KZ solutions and identities") {
  auto P = make_params(7, 3, 1);
  for (int s = 1; s <= 2; ++s) {
    auto r = check_kz_solution(P, s);
    CHECK(r.pass);
    CHECK(*r.claimed_exponent == s);
    if (s == 1) CHECK(check_kz_identities(P, s).pass);
    CHECK(check_gradient_identity(P, s).pass);
  }
  KzCheckOptions ev;
  ev.mode = Mode::Evaluation;
  ev.points = 3;
  CHECK(check_kz_solution(P, 3, ev).pass);
  CHECK(check_gradient_identity(P, 2, ev).pass);
  CHECK(check_kz_solution(make_params(13, 3, 2), 1).pass);
}

TEST_CASE("leading terms, minor, determinant") {
  for (auto P : {make_params(7, 3, 1), make_params(13, 3, 2)}) {
    CHECK(check_leading_terms(P).pass);
    CHECK(check_minor(P).pass);
    auto d = det_phi1_check(P);
    CHECK(d.pass);
  }
  auto lt = leading_term_solutions(make_params(13, 3, 2));
  CHECK(lt[1].binomial == 3);
  auto m = minor_M(make_params(13, 3, 2));
  CHECK(m.degree == 17);
  auto d = det_phi1_check(make_params(13, 3, 2));
  bool found = false;
  for (const auto& [k, v] : d.notes)
    if (k == "entry_1_1_variant") {
      found = true;
      CHECK(v == "general formula");
    }
  CHECK(found);
}

TEST_CASE("solution congruences") {
  auto P = make_params(7, 3, 1);
  for (const auto& r : check_solution_congruences(P, 1)) CHECK_MESSAGE(r.pass, r.check);
  KzCheckOptions ev;
  ev.mode = Mode::Evaluation;
  ev.points = 3;
  for (const auto& r : check_solution_congruences(P, 2, ev)) CHECK_MESSAGE(r.pass, r.check);
  CHECK(check_mod_p_stability(P, 2).pass);
  CHECK(check_mod_p_stability(P, 3, ev).pass);
  auto Q = make_params(13, 3, 2);
  ev.points = 2;
  for (const auto& r : check_solution_congruences(Q, 1, ev)) CHECK_MESSAGE(r.pass, r.check);
}

TEST_CASE("describe") {
  auto j = nlohmann::json::parse(describe_json(make_params(7, 3, 1)));
  CHECK(j["e"] == 1);
  CHECK(j["n"] == 4);
  CHECK(j["d_phi"] == 2);
  CHECK(j["d_M"] == 1);
  auto k = nlohmann::json::parse(describe_json(make_params(13, 3, 2)));
  CHECK(k["d_phi"] == 20);
  CHECK(k["d_M"] == 17);
  CHECK(k["degrees"]["hasse_witt_phi1"][0][0] == 16);
  CHECK(k["degrees"]["hasse_witt_phi1"][1][0] == 17);
  CHECK(k["degrees"]["solution_columns_s1"][0] == 15);
}
