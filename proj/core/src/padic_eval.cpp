#include "dkz/padic_eval.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace dkz {

namespace {

PadicValuation matrix_valuation(const Matrix<UnramifiedElement>& a, const Matrix<UnramifiedElement>& b) {
  PadicValuation best{a(0, 0).ring().precision(), true};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const PadicValuation v = valuation(a(i, j) - b(i, j));
      if (v.value < best.value) best = v;
    }
  return best;
}

std::vector<UnramifiedElement> frobenius_point(const std::vector<UnramifiedElement>& a, int k) {
  std::vector<UnramifiedElement> out;
  for (const auto& x : a) out.push_back(frobenius(x, k));
  return out;
}

void certify(LimitApproximation& L) {
  L.pass = true;
  L.certified_precision = 0;
  for (std::size_t k = 0; k + 1 < L.matrices.size(); ++k) {
    const int s = L.s_values[k];
    const PadicValuation v = matrix_valuation(L.matrices[k + 1], L.matrices[k]);
    L.increments.push_back(v);
    if (v.value >= s && L.pass) L.certified_precision = s;
    else L.pass = false;
  }
}

CongruenceReport point_report(const PointPipeline& pp, const std::string& name, int s) {
  CongruenceReport rep;
  rep.check = name;
  rep.mode = Mode::Evaluation;
  const KZParams& P = pp.params();
  rep.param("p", static_cast<std::int64_t>(P.p)).param("q", static_cast<std::int64_t>(P.q)).param("g", P.g);
  rep.param("m", pp.domain_point().a.at(0).ring().degree()).param("s", s);
  return rep;
}

}  // namespace

DomainPoint classify_point(const KZParams& P, std::vector<UnramifiedElement> a) {
  DomainPoint d;
  d.a = std::move(a);
  KzPoint kp(P, d.a);
  d.in_D = determinant(kp.A(1)).is_unit();
  bool distinct = true;
  for (std::size_t i = 0; i < d.a.size(); ++i)
    for (std::size_t j = i + 1; j < d.a.size(); ++j)
      if (!(d.a[i] - d.a[j]).is_unit()) distinct = false;
  d.in_D_o = d.in_D && distinct;
  return d;
}

void require_domain_degree(const KZParams& P, int m) {
  const std::uint64_t pm = P.p > 0 ? [&] {
    std::uint64_t r = 1;
    for (int i = 0; i < m; ++i) r *= P.p;
    return r;
  }() : 0;
  if (m < 1 || m > kMaxExtensionDegree || pm <= static_cast<std::uint64_t>(P.d_phi()))
    throw InvalidParams("p^m > d_phi fails: need p^m > " + std::to_string(P.d_phi()) + ", got p^m = " +
                        std::to_string(pm));
}

bool rank_hypothesis_holds(const KZParams& P, int m) {
  std::uint64_t pm = 1;
  for (int i = 0; i < m; ++i) pm *= P.p;
  return pm > static_cast<std::uint64_t>(P.d_phi() + P.d_M());
}

std::vector<DomainPoint> find_domain_points(const KZParams& P, const UnramifiedRing& ring, int count,
                                            std::uint64_t seed, int budget) {
  require_domain_degree(P, ring.degree());
  if (budget <= 0) budget = 200 * std::max(count, 1);
  const std::uint64_t field = ring.residue_field_size();
  if (field < static_cast<std::uint64_t>(P.n)) throw SearchExhausted("residue field smaller than n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, field - 1);
  std::vector<DomainPoint> out;
  for (int attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    std::set<std::uint64_t> used;
    std::vector<UnramifiedElement> a;
    while (static_cast<int>(a.size()) < P.n) {
      const std::uint64_t k = dist(rng);
      if (!used.insert(k).second) continue;
      const UnramifiedElement r = ring.residue_from_index(k);
      a.push_back(teichmuller_lift(r.coords(), ring));
    }
    DomainPoint d = classify_point(P, std::move(a));
    if (d.in_D_o) out.push_back(std::move(d));
  }
  if (out.empty()) throw SearchExhausted("no domain point found in " + std::to_string(budget) + " attempts");
  return out;
}

PointPipeline::PointPipeline(const KZParams& P, const DomainPoint& pt)
    : P_(P), pt_(pt), at_(P, pt.a), frob_(P, frobenius_point(pt.a, P.e)) {}

Matrix<UnramifiedElement> PointPipeline::A_inv(int s) {
  auto it = inv_.find(s);
  if (it == inv_.end()) it = inv_.emplace(s, matrix_inverse(at_.A(s))).first;
  return it->second;
}

LimitApproximation ratio_sequence(PointPipeline& pp, int s_max) {
  LimitApproximation L;
  L.target = "A";
  bool det_units = true;
  for (int s = 1; s <= s_max; ++s) {
    Matrix<UnramifiedElement> B = pp.at().A(s);
    if (s > 1) B = B * matrix_inverse(pp.frob().A(s - 1));
    if (!determinant(B).is_unit()) det_units = false;
    L.s_values.push_back(s);
    L.matrices.push_back(std::move(B));
  }
  certify(L);
  L.notes.push_back(det_units ? "det B_s unit for all s" : "det B_s not a unit");
  L.pass = L.pass && det_units;
  return L;
}

LimitApproximation solution_bundle_sequence(PointPipeline& pp, int s_max) {
  LimitApproximation L;
  L.target = "I";
  for (int s = 1; s <= s_max; ++s) {
    L.s_values.push_back(s);
    L.matrices.push_back(pp.at().I(s) * pp.A_inv(s));
  }
  certify(L);
  return L;
}

std::pair<LimitApproximation, LimitApproximation> derivative_bundle_sequence(PointPipeline& pp, int i, int s_max) {
  LimitApproximation LI, LA;
  LI.target = "I^(" + std::to_string(i + 1) + ")";
  LA.target = "A^(" + std::to_string(i + 1) + ")";
  for (int s = 1; s <= s_max; ++s) {
    LI.s_values.push_back(s);
    LA.s_values.push_back(s);
    LI.matrices.push_back(pp.at().I_d(s, i) * pp.A_inv(s));
    LA.matrices.push_back(pp.at().A_d(s, i) * pp.A_inv(s));
  }
  certify(LI);
  certify(LA);
  return {LI, LA};
}

CongruenceReport check_gaudin_relation(PointPipeline& pp, int s) {
  const KZParams& P = pp.params();
  CongruenceReport rep = point_report(pp, "gaudin_relation", s);
  if (!pp.domain_point().in_D_o) throw PreconditionViolated("Gaudin relation needs a point of D^o");
  const auto& a = pp.domain_point().a;
  const UnramifiedRing& R = a[0].ring();
  const int claimed = P.e * s;
  if (claimed > R.precision()) throw InvalidArgument("working precision below p^{es}");
  const UnramifiedElement qinv = R.from_int(static_cast<std::int64_t>(P.q)).inverse();
  const auto X = pp.at().I(s) * pp.A_inv(s);
  PadicValuation best{R.precision(), true};
  for (int i = 0; i < P.n; ++i) {
    const auto Xi = pp.at().I_d(s, i) * pp.A_inv(s);
    for (int l = 0; l < P.g; ++l) {
      std::vector<UnramifiedElement> w;
      for (int k = 0; k < P.n; ++k) w.push_back(X(static_cast<std::size_t>(k), static_cast<std::size_t>(l)));
      for (int k = 0; k < P.n; ++k) {
        UnramifiedElement h = R.zero();
        for (int j = 0; j < P.n; ++j)
          if (j != i && (k == i || k == j))
            h += GaudinData::apply(i, j, w, k) * (a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(j)]).inverse();
        const PadicValuation v = valuation(Xi(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) - qinv * h);
        if (v.value < best.value) best = v;
        if (!rep.witness && v.value < claimed)
          rep.witness = "i=" + std::to_string(i + 1) + " entry(" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                        ") valuation " + std::to_string(v.value);
      }
    }
  }
  rep.set_valuation(claimed, best);
  return rep;
}

CongruenceReport check_connection_identity(PointPipeline& pp, int s, int u, int v) {
  const KZParams& P = pp.params();
  CongruenceReport rep = point_report(pp, "connection_identity", s);
  rep.param("u", u + 1).param("v", v + 1);
  if (s == 0) {
    rep.set_valuation(0, {pp.domain_point().a[0].ring().precision(), true});
    rep.note("vacuous", "s = 0");
    return rep;
  }
  const auto& a = pp.domain_point().a;
  // Level s from jets: z_v -> a_v + e1, z_u -> a_u + e2.
  const LaurentPoly base = FactoredPoly::symmetric_product(P.layout(), LaurentPoly::parse("t1 + -1 * z1", kFactorLayout)).expand();
  const JetPoly phi = evaluate(base, make_jet_point(a, v, u)).power(P.N(s));
  const auto g = static_cast<std::size_t>(P.g);
  const auto pe = static_cast<std::int64_t>(P.pe(s));
  Matrix<Jet> J(g, g, Jet(a[0].ring().zero()));
  for (std::size_t r = 1; r <= g; ++r)
    for (std::size_t c = 1; c <= g; ++c)
      J(r - 1, c - 1) = phi.coeff(pe * static_cast<std::int64_t>(c) - static_cast<std::int64_t>(r));
  const JetMatrixParts parts = split(J);
  const auto Ainv = matrix_inverse(parts.c0);
  const auto lhs = parts.c12 * Ainv - parts.c1 * Ainv * parts.c2 * Ainv;
  // Level s + 1 from the division path.
  const auto B = pp.A_inv(s + 1);
  const auto rhs = pp.at().A_dd(s + 1, u, v) * B - (pp.at().A_d(s + 1, v) * B) * (pp.at().A_d(s + 1, u) * B);
  const PadicValuation val = matrix_valuation(lhs, rhs);
  rep.set_valuation(s, val);
  if (!rep.pass) rep.witness = "valuation " + std::to_string(val.value);
  return rep;
}

RankResult rank_check(const KZParams& P, const std::vector<DomainPoint>& points) {
  RankResult out;
  CongruenceReport& rep = out.report;
  rep.check = "rank";
  rep.mode = Mode::Evaluation;
  rep.param("p", static_cast<std::int64_t>(P.p)).param("q", static_cast<std::int64_t>(P.q)).param("g", P.g);
  if (!points.empty()) rep.param("m", points[0].a.at(0).ring().degree());
  std::vector<std::size_t> rows, cols;
  for (int l = 1; l <= P.g; ++l) {
    rows.push_back(static_cast<std::size_t>(static_cast<int>(P.q) * (P.g - l)));
    cols.push_back(static_cast<std::size_t>(l - 1));
  }
  int units = 0;
  for (const auto& pt : points) {
    KzPoint kp(P, pt.a);
    const auto X = kp.I(1) * matrix_inverse(kp.A(1));
    const bool unit = determinant(X.select(rows, cols)).is_unit();
    out.unit_at_point.push_back(unit);
    units += unit ? 1 : 0;
  }
  rep.pass = units > 0;
  rep.note("points", std::to_string(points.size()));
  rep.note("unit_minor_points", std::to_string(units));
  if (!rep.pass) rep.witness = "minor not a unit at any searched point";
  return out;
}

std::string base_p_digits(const UnramifiedElement& x) {
  const UnramifiedRing& R = x.ring();
  const std::uint64_t p = R.prime();
  std::string out;
  for (int i = 0; i < R.degree(); ++i) {
    if (i) out += ':';
    Residue c = x.coord(i);
    for (int d = 0; d < R.precision(); ++d) {
      out += std::to_string(c % p);
      if (d + 1 < R.precision()) out += '.';
      c /= p;
    }
  }
  return out;
}

}  // namespace dkz
