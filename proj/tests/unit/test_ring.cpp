#include "doctest.h"

#include "dkz/matrix.hpp"
#include "dkz/ring.hpp"

using namespace dkz;

TEST_CASE("modular inverse and valuation oracles") {
  ModulusContext c49(7, 2);
  CHECK(invert_mod(2, c49) == 25);
  CHECK_THROWS_AS(invert_mod(14, c49), NotAUnit);
  ModulusContext c343(7, 3);
  CHECK(valuation(49, c343).value == 2);
  CHECK_FALSE(valuation(49, c343).saturated);
  CHECK(valuation(0, c343).saturated);
  CHECK(valuation(0, c343).value == 3);
  CHECK(valuation(mpz_class(7 * 7 * 7 * 5), 7, 10).value == 3);
}

TEST_CASE("context rejects bad parameters") {
  CHECK_THROWS_AS(ModulusContext(2, 3), InvalidArgument);
  CHECK_THROWS_AS(ModulusContext(9, 3), InvalidArgument);
  CHECK_THROWS_AS(ModulusContext(7, 0), InvalidArgument);
  CHECK_THROWS_AS(ModulusContext(7, 40), InvalidArgument);
}

TEST_CASE("teichmuller lift over Z_7 mod 49") {
  UnramifiedRing ring(ModulusContext(7, 2), 1);
  auto t = teichmuller_lift(3, ring);
  CHECK(t.coord(0) == 31);
  CHECK(t.pow(7) == t);
  CHECK(t.pow(6) == ring.one());
}

TEST_CASE("defining polynomials") {
  UnramifiedRing r7(ModulusContext(7, 2), 2);
  CHECK(r7.defining_polynomial()[0] == 1);
  CHECK(r7.defining_polynomial()[1] == 0);
  UnramifiedRing r13(ModulusContext(13, 2), 2);
  CHECK(r13.defining_polynomial()[0] == 2);
  CHECK(r13.defining_polynomial()[1] == 0);
}

TEST_CASE("unramified arithmetic, inverse and frobenius") {
  UnramifiedRing ring(ModulusContext(7, 4), 2);
  std::vector<Residue> u{3, 5};
  auto a = teichmuller_lift(u, ring);
  CHECK(a.pow(49) == a);
  auto inv = a.inverse();
  CHECK(a * inv == ring.one());
  CHECK(frobenius(frobenius(a, 1), 1) == a);
  CHECK_FALSE(frobenius(a, 1) == a);
  auto seven = ring.from_int(7);
  CHECK_THROWS_AS(seven.inverse(), NotAUnit);
  CHECK(valuation(seven * seven).value == 2);
}

TEST_CASE("matrix inverse, determinant, adjugate") {
  UnramifiedRing ring(ModulusContext(7, 3), 1);
  Matrix<UnramifiedElement> m(2, 2, ring.zero());
  m(0, 0) = ring.from_int(7);
  m(0, 1) = ring.from_int(1);
  m(1, 0) = ring.from_int(1);
  m(1, 1) = ring.from_int(3);
  auto inv = matrix_inverse(m);
  CHECK((m * inv)(0, 0) == ring.one());
  CHECK((m * inv)(0, 1) == ring.zero());
  CHECK(determinant(m) == ring.from_int(20));
  auto adj = adjugate(m);
  auto prod = adj * m;
  CHECK(prod(0, 0) == ring.from_int(20));
  CHECK(prod(1, 0) == ring.zero());
  Matrix<UnramifiedElement> s(2, 2, ring.zero());
  s(0, 0) = ring.from_int(7);
  s(1, 1) = ring.from_int(1);
  CHECK_THROWS_AS(matrix_inverse(s), SingularModP);
}
