#include "doctest.h"

#include "dkz/factored.hpp"
#include "dkz/laurent.hpp"

using namespace dkz;

namespace {

LaurentPoly master(VarLayout layout) {
  LaurentPoly f = LaurentPoly::constant(layout, 1);
  for (int i = 0; i < layout.n; ++i) f = f * (LaurentPoly::t_var(layout, 0) - LaurentPoly::z_var(layout, i));
  return f;
}

}  // namespace

TEST_CASE("parse, print, arithmetic") {
  VarLayout l{1, 2};
  auto a = LaurentPoly::parse("3 * t1^2 * z1 + -2 * z2^-1", l);
  CHECK(a.size() == 2);
  auto b = LaurentPoly::parse(a.to_string(), l);
  CHECK(a == b);
  CHECK((a - a).is_zero());
  CHECK((a * a).size() == 3);
  CHECK(LaurentPoly(l).to_string() == "0");
}

TEST_CASE("coefficient extraction oracle") {
  VarLayout l{1, 4};
  auto p2 = master(l).power(2);
  auto c = p2.coeff_t(6);
  // e1^2 + 2 e2 in four variables
  auto z = [&](int i) { return LaurentPoly::z_var(l, i); };
  LaurentPoly e1 = z(0) + z(1) + z(2) + z(3);
  LaurentPoly e2(l);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) e2 += z(i) * z(j);
  CHECK(c == e1 * e1 + e2.scaled(2));
}

TEST_CASE("sigma, derivatives, newton polytope") {
  VarLayout l{1, 2};
  auto f = LaurentPoly::parse("t1^2 * z1 + 5 * t1 * z2^3", l);
  auto s = f.sigma_subst(7, 1, SigmaScope::ZOnly);
  CHECK(s.coeff_t(2) == LaurentPoly::parse("z1^7", l));
  auto sa = f.sigma_subst(7, 1, SigmaScope::All);
  CHECK(sa.coeff_t(14) == LaurentPoly::parse("z1^7", l));
  CHECK(f.derivative_z(1) == LaurentPoly::parse("15 * t1 * z2^2", l));
  CHECK(f.derivative_t(0) == LaurentPoly::parse("2 * t1 * z1 + 5 * z2^3", l));
  auto np = f.newton_polytope_t();
  CHECK(np.lo[0] == 1);
  CHECK(np.hi[0] == 2);
  CHECK(f.leading_term().coeff == 1);
  CHECK_THROWS_AS(LaurentPoly(l).leading_term(), ZeroPolynomial);
}

TEST_CASE("modular multiply agrees with exact") {
  VarLayout l{1, 3};
  auto p = master(l);
  auto exact = p.power(5);
  auto mod = p.reduced(49).power(5);
  CHECK(exact.reduced(49) == mod);
  CHECK(exact.homogeneous_degree().value() == 15);
}

TEST_CASE("factored polynomials agree with expansion") {
  VarLayout l{1, 3};
  LaurentPoly lin = LaurentPoly::parse("t1 + -1 * z1", kFactorLayout);
  auto f = FactoredPoly::symmetric_product(l, lin).power(4);
  auto g = f - f.sigma_subst(7, 1, SigmaScope::All) * FactoredPoly::symmetric_product(l, lin);
  auto e = g.expand();
  auto direct = master(l).power(4) - master(l).power(4).sigma_subst(7, 1, SigmaScope::All) * master(l);
  CHECK(e == direct);
  for (std::int64_t v : {0, 3, 7, 12, 22, 87})
    CHECK(g.coeff_t(v) == direct.coeff_t(v));
  ModulusContext ctx(7, 3);
  auto scan = g.scan_valuation(ctx, 1);
  auto ref = direct.scan_valuation(7, 3, 1);
  CHECK(scan.min == ref.min);
  CHECK(scan.witness.has_value() == ref.witness.has_value());
  CHECK(g.derivative_z(1).expand() == direct.derivative_z(1));
  CHECK(g.derivative_t().expand() == direct.derivative_t(0));
  CHECK((g - g).is_exact_zero());
  CHECK_FALSE(g.is_exact_zero());
  CHECK(g.nonzero_outside_t(0, 80).has_value());
  CHECK_FALSE(g.nonzero_outside_t(0, 87).has_value());
}
