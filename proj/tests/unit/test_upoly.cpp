#include "doctest.h"

#include <random>

#include "dkz/upoly.hpp"

using namespace dkz;

namespace {

UPoly random_upoly(const UnramifiedRing& ring, std::size_t len, std::mt19937_64& rng) {
  UPoly p(&ring, -3, len);
  std::uniform_int_distribution<Residue> d(0, ring.base().modulus() - 1);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Residue> c(static_cast<std::size_t>(ring.degree()));
    for (auto& x : c) x = d(rng);
    p.add_to_coeff(-3 + static_cast<std::int64_t>(i), ring.from_coords(c));
  }
  return p;
}

UPoly naive(const UPoly& a, const UPoly& b) {
  UPoly out(a.ring_ptr());
  for (std::int64_t i = a.low(); i <= a.high(); ++i)
    for (std::int64_t j = b.low(); j <= b.high(); ++j) out.add_to_coeff(i + j, a.coeff(i) * b.coeff(j));
  return out;
}

}  // namespace

TEST_CASE("kronecker product matches naive convolution") {
  std::mt19937_64 rng(7);
  for (int m : {1, 2, 3}) {
    UnramifiedRing ring(ModulusContext(13, 5), m);
    auto a = random_upoly(ring, 150, rng);
    auto b = random_upoly(ring, 97, rng);
    CHECK(multiply(a, b) == naive(a, b));
    CHECK(multiply(a, a) == naive(a, a));
  }
}

TEST_CASE("power, dilation and linear division") {
  UnramifiedRing ring(ModulusContext(7, 4), 2);
  auto r = teichmuller_lift(std::vector<Residue>{2, 3}, ring);
  UPoly lin = UPoly::monomial(ring.one(), 1) - UPoly::constant(r);
  auto p = lin.power(40);
  CHECK(p.high() == 40);
  CHECK(p.coeff(39) == -(r.scaled(40)));
  auto q = p.divide_linear(r);
  CHECK(q == lin.power(39));
  CHECK_THROWS_AS(p.divide_linear(ring.from_int(5)), PreconditionViolated);
  // root zero: only the shift
  auto tp = p * UPoly::monomial(ring.one(), 2);
  CHECK(tp.divide_linear(ring.zero()) == p * UPoly::monomial(ring.one(), 1));
  CHECK_THROWS_AS(p.divide_linear(ring.zero()), PreconditionViolated);
  auto d = lin.dilate(3);
  CHECK(d.coeff(3) == ring.one());
  CHECK(d.coeff(1) == ring.zero());
}

TEST_CASE("jet evaluation gives derivatives") {
  UnramifiedRing ring(ModulusContext(7, 4), 1);
  VarLayout l{1, 3};
  auto f = LaurentPoly::parse("3 * t1^2 * z1^2 * z2 + -1 * t1 * z2^3 * z3 + 5 * z1 * z3^4", l);
  std::vector<UnramifiedElement> a{ring.from_int(2), ring.from_int(3), ring.from_int(5)};
  auto ev = [&](const LaurentPoly& g, std::int64_t k) { return evaluate(g, make_jet_point(a)).coeff(k).value(); };
  for (int v = 0; v < 3; ++v) {
    auto j = evaluate(f, make_jet_point(a, v));
    for (std::int64_t k = 0; k <= 2; ++k) CHECK(j.coeff(k).c[1] == ev(f.derivative_z(v), k));
    for (int u = 0; u < 3; ++u) {
      auto jj = evaluate(f, make_jet_point(a, v, u));
      for (std::int64_t k = 0; k <= 2; ++k) CHECK(jj.coeff(k).c[3] == ev(f.derivative_z(v).derivative_z(u), k));
    }
  }
  auto fp = FactoredPoly::symmetric_product(l, LaurentPoly::parse("t1^2 + -2 * t1 * z1 + 3 * z1^2", kFactorLayout))
                .power(3);
  auto ex = fp.expand();
  for (int v = 0; v < 3; ++v)
    for (int u = 0; u < 3; ++u) {
      auto x = evaluate(fp, make_jet_point(a, v, u));
      auto y = evaluate(ex, make_jet_point(a, v, u));
      for (std::int64_t k = 0; k <= 18; ++k) CHECK(x.coeff(k) == y.coeff(k));
    }
  auto jp = evaluate(fp, make_jet_point(a, 1, 2));
  auto pw = jp.power(5);
  auto direct = jp * jp * jp * jp * jp;
  for (std::int64_t k = 0; k <= 90; k += 7) CHECK(pw.coeff(k) == direct.coeff(k));
}

TEST_CASE("jet inverse and powers") {
  UnramifiedRing ring(ModulusContext(5, 3), 2);
  Jet x(ring.from_int(3), ring.from_int(2), ring.from_int(7), ring.from_int(4));
  CHECK(x * x.inverse() == Jet(ring.one()));
  CHECK(x.pow(3) == x * x * x);
  CHECK(x.pow(-2) * x.pow(2) == Jet(ring.one()));
}
