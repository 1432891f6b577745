#include "dkz/dwork.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace dkz {

namespace {

std::uint64_t ipow(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) throw ExponentOverflow("p^k overflows 62 bits");
    r *= p;
  }
  return r;
}

std::string point_to_string(const LatticePoint& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return x.size() == 1 ? s : "(" + s + ")";
}

std::string entry_name(std::size_t i, std::size_t j) {
  return "entry(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

IndexSet interval_index_set(std::int64_t lo, std::int64_t hi) {
  IndexSet out;
  for (std::int64_t x = lo; x <= hi; ++x) out.push_back({x});
  return out;
}

int DworkTuple::k(int j) const {
  if (j < 0 || j > static_cast<int>(e.size())) throw InvalidArgument("e index out of range");
  int acc = 0;
  for (int i = 0; i < j; ++i) acc += e[static_cast<std::size_t>(i)];
  return acc;
}

void DworkTuple::validate() const {
  if (!is_prime(p) || p == 2) throw InvalidParams("p must be an odd prime");
  layout.validate();
  if (lambda.empty()) throw InvalidArgument("tuple needs at least Lambda_0");
  const auto L = static_cast<int>(lambda.size()) - 1;
  if (static_cast<int>(e.size()) != L && static_cast<int>(e.size()) != L + 1)
    throw InvalidArgument("e must have l or l+1 entries");
  if (delta.size() != e.size() + 1) throw InvalidArgument("Delta must have one more entry than e");
  for (int x : e)
    if (x <= 0) throw InvalidArgument("e entries must be positive");
  for (const auto& d : delta) {
    if (d.empty() || d.size() != delta[0].size()) throw InvalidArgument("all Delta_j must have the same positive size");
    for (const auto& pt : d)
      if (static_cast<int>(pt.size()) != layout.r) throw InvalidArgument("Delta point dimension must equal r");
  }
  for (const auto& f : lambda)
    if (!(f.layout() == layout)) throw LayoutMismatch("Lambda layout differs from tuple layout");
}

// ---------------------------------------------------------------------------
// Ghosts

GhostSequence::GhostSequence(DworkTuple tuple) : tuple_(std::move(tuple)) {
  tuple_.validate();
  const int L = tuple_.l();
  for (int j = 0; j <= L; ++j) {
    FactoredPoly w = tuple_.lambda[static_cast<std::size_t>(j)];
    w_.emplace(std::make_pair(j, j), w);
    for (int s = j + 1; s <= L; ++s) {
      w = w * tuple_.lambda[static_cast<std::size_t>(s)].power(ipow(tuple_.p, tuple_.k(j, s)));
      w_.emplace(std::make_pair(s, j), w);
    }
  }
  v_.push_back(tuple_.lambda[0]);
  for (int s = 1; s <= L; ++s) {
    FactoredPoly v = W(s, 0);
    for (int j = 1; j <= s; ++j) v -= V(j - 1) * W(s, j).sigma_subst(tuple_.p, tuple_.k(j), SigmaScope::All);
    v_.push_back(std::move(v));
  }
}

const FactoredPoly& GhostSequence::W(int s, int j) const {
  auto it = w_.find({s, j});
  if (it == w_.end()) throw InvalidArgument("W_s^(j) needs 0 <= j <= s <= l");
  return it->second;
}

FactoredPoly GhostSequence::residual(int s) const {
  FactoredPoly r = W(s, 0) - V(s);
  for (int j = 1; j <= s; ++j) r -= V(j - 1) * W(s, j).sigma_subst(tuple_.p, tuple_.k(j), SigmaScope::All);
  return r;
}

GhostSequence ghosts(const DworkTuple& tuple) { return GhostSequence(tuple); }

// ---------------------------------------------------------------------------
// Hasse-Witt matrices

namespace {

template <class F>
HasseWittMatrix hw_generic(std::uint64_t p, int m, const IndexSet& rows, const IndexSet& cols, const VarLayout& layout,
                           F&& coeff) {
  const auto pm = static_cast<std::int64_t>(ipow(p, m));
  HasseWittMatrix out{m, rows, cols, Matrix<LaurentPoly>(rows.size(), cols.size(), LaurentPoly(layout))};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i].size() != static_cast<std::size_t>(layout.r) || cols[j].size() != static_cast<std::size_t>(layout.r))
        throw InvalidArgument("index point dimension must equal r");
      std::vector<std::int64_t> target(static_cast<std::size_t>(layout.r));
      for (int a = 0; a < layout.r; ++a)
        target[static_cast<std::size_t>(a)] = pm * cols[j][static_cast<std::size_t>(a)] - rows[i][static_cast<std::size_t>(a)];
      out.entries(i, j) = coeff(target);
    }
  return out;
}

}  // namespace

HasseWittMatrix hasse_witt(std::uint64_t p, int m, const IndexSet& rows, const IndexSet& cols, const LaurentPoly& F) {
  return hw_generic(p, m, rows, cols, F.layout(),
                    [&](const std::vector<std::int64_t>& v) { return F.coeff_t(std::span<const std::int64_t>(v)); });
}

HasseWittMatrix hasse_witt(std::uint64_t p, int m, const IndexSet& rows, const IndexSet& cols, const FactoredPoly& F) {
  if (F.layout().r != 1) throw DimensionUnsupported("factored Hasse-Witt matrices need r = 1");
  return hw_generic(p, m, rows, cols, F.layout(), [&](const std::vector<std::int64_t>& v) { return F.coeff_t(v[0]); });
}

// ---------------------------------------------------------------------------
// Admissibility

CongruenceReport check_admissible(std::uint64_t p, const std::vector<IndexSet>& delta, const std::vector<int>& e,
                                  const std::vector<LatticePolytopeT>& polytopes) {
  CongruenceReport rep;
  rep.check = "admissible";
  rep.param("p", static_cast<std::int64_t>(p));
  const int L = static_cast<int>(delta.size()) - 1;
  rep.param("l", L);
  if (static_cast<int>(e.size()) < L) throw InvalidArgument("admissibility needs e_1..e_l");
  if (static_cast<int>(polytopes.size()) < L) throw InvalidArgument("admissibility needs N_0..N_{l-1}");
  rep.pass = true;
  auto k = [&](int i, int j) {
    int acc = 0;
    for (int a = i; a < j; ++a) acc += e[static_cast<std::size_t>(a)];
    return acc;
  };
  const int r = polytopes.empty() ? 1 : polytopes[0].r;
  for (int i = 0; i < L && rep.pass; ++i) {
    for (int j = i; j < L && rep.pass; ++j) {
      const auto P = static_cast<std::int64_t>(ipow(p, k(i, j + 1)));
      const IndexSet& target = delta[static_cast<std::size_t>(j + 1)];
      std::set<LatticePoint> allowed(target.begin(), target.end());
      auto fail = [&](const LatticePoint& x) {
        rep.pass = false;
        rep.witness = "point " + point_to_string(x) + " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
      };
      if (r == 1) {
        std::int64_t lo = 0, hi = 0;
        for (int a = i; a <= j; ++a) {
          const auto sc = static_cast<std::int64_t>(ipow(p, k(i, a)));
          lo += sc * polytopes[static_cast<std::size_t>(a)].lo[0];
          hi += sc * polytopes[static_cast<std::size_t>(a)].hi[0];
        }
        for (const auto& d : delta[static_cast<std::size_t>(i)]) {
          const std::int64_t xlo = d[0] + lo, xhi = d[0] + hi;
          // quotients x / P for multiples x of P in [xlo, xhi]
          auto floordiv = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
          const std::int64_t qlo = -floordiv(-xlo, P), qhi = floordiv(xhi, P);
          for (std::int64_t q = qlo; q <= qhi; ++q) {
            if (!allowed.count({q})) {
              fail({q * P});
              break;
            }
          }
          if (!rep.pass) break;
        }
      } else {
        std::set<LatticePoint> sum;
        for (const auto& d : delta[static_cast<std::size_t>(i)]) sum.insert(d);
        for (int a = i; a <= j; ++a) {
          const auto& poly = polytopes[static_cast<std::size_t>(a)];
          if (poly.points.empty()) throw DimensionUnsupported("r > 1 admissibility needs explicit point sets");
          const auto sc = static_cast<std::int64_t>(ipow(p, k(i, a)));
          std::set<LatticePoint> next;
          for (const auto& x : sum)
            for (const auto& y : poly.points) {
              LatticePoint z = x;
              for (int c = 0; c < r; ++c) z[static_cast<std::size_t>(c)] += sc * y[static_cast<std::size_t>(c)];
              next.insert(z);
            }
          sum = std::move(next);
        }
        for (const auto& x : sum) {
          bool divisible = true;
          LatticePoint q(x.size());
          for (std::size_t c = 0; c < x.size(); ++c) {
            if (x[c] % P != 0) divisible = false;
            q[c] = x[c] / P;
          }
          if (divisible && !allowed.count(q)) {
            fail(x);
            break;
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Comparison helpers

CongruenceReport compare_matrices(const Matrix<LaurentPoly>& a, const Matrix<LaurentPoly>& b, std::uint64_t p,
                                  int precision, int claimed) {
  CongruenceReport rep;
  PadicValuation best{precision, true};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const LaurentPoly d = a(i, j) - b(i, j);
      const ValuationScan scan = d.scan_valuation(p, precision, claimed);
      if (scan.min.value < best.value) best = scan.min;
      if (!rep.witness && scan.witness)
        rep.witness = entry_name(i, j) + " monomial " + monomial_to_string(*scan.witness, d.layout()) +
                      " valuation " + std::to_string(scan.witness_valuation->value);
    }
  rep.set_valuation(claimed, best);
  return rep;
}

CongruenceReport compare_matrices(const Matrix<UnramifiedElement>& a, const Matrix<UnramifiedElement>& b,
                                  int claimed) {
  CongruenceReport rep;
  const int M = a(0, 0).ring().precision();
  PadicValuation best{M, true};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const PadicValuation v = valuation(a(i, j) - b(i, j));
      if (v.value < best.value) best = v;
      if (!rep.witness && v.value < claimed) rep.witness = entry_name(i, j) + " valuation " + std::to_string(v.value);
    }
  rep.set_valuation(claimed, best);
  return rep;
}

// ---------------------------------------------------------------------------
// Symbolic backend

namespace {

std::string spec_key(const HwSpec& s) {
  std::ostringstream os;
  os << s.m << ':' << s.row << ':' << s.col << ':' << (s.src.kind == HwSource::W ? 'W' : 'V') << s.src.s << ':'
     << s.src.j << ':' << s.sigma;
  return os.str();
}

}  // namespace

SymbolicHw::SymbolicHw(const GhostSequence& seq, int precision) : seq_(seq), precision_(precision) {
  mpz_ui_pow_ui(modulus_.get_mpz_t(), seq.tuple().p, static_cast<unsigned long>(precision));
}

const Matrix<LaurentPoly>& SymbolicHw::exact(const HwSpec& spec) {
  const std::string key = spec_key(spec);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const DworkTuple& t = seq_.tuple();
  const FactoredPoly& X = spec.src.kind == HwSource::W ? seq_.W(spec.src.s, spec.src.j) : seq_.V(spec.src.s);
  HasseWittMatrix hw = hasse_witt(t.p, spec.m, t.delta.at(static_cast<std::size_t>(spec.row)),
                                  t.delta.at(static_cast<std::size_t>(spec.col)), X);
  Matrix<LaurentPoly> m = hw.entries;
  if (spec.sigma > 0) m = m.map([&](const LaurentPoly& f) { return f.sigma_subst(t.p, spec.sigma, SigmaScope::ZOnly); });
  return cache_.emplace(key, std::move(m)).first->second;
}

Matrix<LaurentPoly> SymbolicHw::hw(const HwSpec& spec) {
  return exact(spec).map([&](const LaurentPoly& f) { return f.reduced(modulus_); });
}

Matrix<LaurentPoly> SymbolicHw::hw_d(const HwSpec& spec, int v) {
  return exact(spec).map([&](const LaurentPoly& f) { return f.derivative_z(v).reduced(modulus_); });
}

Matrix<LaurentPoly> SymbolicHw::hw_dd(const HwSpec& spec, int u, int v) {
  return exact(spec).map([&](const LaurentPoly& f) { return f.derivative_z(v).derivative_z(u).reduced(modulus_); });
}

LaurentPoly SymbolicHw::one() const { return LaurentPoly::constant(seq_.tuple().layout, 1, modulus_); }

// ---------------------------------------------------------------------------
// Evaluation backend

EvalHw::EvalHw(const DworkTuple& tuple, std::vector<UnramifiedElement> point) : tuple_(tuple), point_(std::move(point)) {
  if (tuple.layout.r != 1) throw DimensionUnsupported("evaluation mode needs r = 1");
  if (static_cast<int>(point_.size()) != tuple.layout.n) throw InvalidArgument("point dimension must equal n");
}

std::string EvalHw::key(const JetPoint& pt) const {
  std::string s;
  for (const auto& j : pt)
    for (const auto& c : j.c) {
      for (int i = 0; i < c.ring().degree(); ++i) s += std::to_string(c.coord(i)) + ",";
      s += ";";
    }
  return s;
}

const JetPoly& EvalHw::lambda_power(int i, int k, const JetPoint& pt) {
  // Identical Lambda entries share one cache slot.
  int canon = i;
  for (int a = 0; a < i; ++a) {
    const auto& x = tuple_.lambda[static_cast<std::size_t>(a)];
    const auto& y = tuple_.lambda[static_cast<std::size_t>(i)];
    if (x.terms().size() != y.terms().size()) continue;
    bool same = true;
    for (std::size_t t = 0; t < x.terms().size() && same; ++t) {
      const auto& tx = x.terms()[t];
      const auto& ty = y.terms()[t];
      if (tx.coeff != ty.coeff || tx.core.has_value() != ty.core.has_value()) same = false;
      else if (tx.core && !(*tx.core == *ty.core)) same = false;
      for (std::size_t f = 0; f < tx.factors.size() && same; ++f)
        if (!same_factor(tx.factors[f], ty.factors[f])) same = false;
    }
    if (same) {
      canon = a;
      break;
    }
  }
  const std::string ck = "L" + std::to_string(canon) + "^" + std::to_string(k) + "@" + key(pt);
  auto it = cache_.find(ck);
  if (it != cache_.end()) return it->second;
  JetPoly val = k == 0 ? evaluate(tuple_.lambda[static_cast<std::size_t>(canon)], pt)
                       : lambda_power(canon, k - 1, pt).power(tuple_.p);
  return cache_.emplace(ck, std::move(val)).first->second;
}

const JetPoly& EvalHw::source(const HwSource& src, const JetPoint& pt) {
  const std::string ck = (src.kind == HwSource::W ? "W" : "V") + std::to_string(src.s) + "," +
                         std::to_string(src.j) + "@" + key(pt);
  auto it = cache_.find(ck);
  if (it != cache_.end()) return it->second;
  JetPoly val;
  if (src.kind == HwSource::W) {
    if (src.j < 0 || src.j > src.s || src.s > tuple_.l()) throw InvalidArgument("W_s^(j) needs 0 <= j <= s <= l");
    val = lambda_power(src.j, 0, pt);
    for (int i = src.j + 1; i <= src.s; ++i) val = val * lambda_power(i, tuple_.k(src.j, i), pt);
  } else {
    val = source({HwSource::W, src.s, 0}, pt);
    for (int j = 1; j <= src.s; ++j) {
      const int kj = tuple_.k(j);
      const JetPoly& w = source({HwSource::W, src.s, j}, frobenius(pt, kj));
      val -= source({HwSource::V, j - 1, 0}, pt) * w.dilate(ipow(tuple_.p, kj));
    }
  }
  return cache_.emplace(ck, std::move(val)).first->second;
}

Matrix<Jet> EvalHw::hw_jet(const HwSpec& spec, int v, int u) {
  const JetPoint pt = frobenius(make_jet_point(point_, v, u), spec.sigma);
  const JetPoly& X = source(spec.src, pt);
  const IndexSet& rows = tuple_.delta.at(static_cast<std::size_t>(spec.row));
  const IndexSet& cols = tuple_.delta.at(static_cast<std::size_t>(spec.col));
  const auto pm = static_cast<std::int64_t>(ipow(tuple_.p, spec.m));
  Matrix<Jet> out(rows.size(), cols.size(), Jet(point_[0].ring().zero()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = X.coeff(pm * cols[j][0] - rows[i][0]);
  return out;
}

Matrix<UnramifiedElement> EvalHw::hw(const HwSpec& spec) { return split(hw_jet(spec, -1, -1)).c0; }
Matrix<UnramifiedElement> EvalHw::hw_d(const HwSpec& spec, int v) { return split(hw_jet(spec, v, -1)).c1; }
Matrix<UnramifiedElement> EvalHw::hw_dd(const HwSpec& spec, int u, int v) { return split(hw_jet(spec, v, u)).c12; }

// ---------------------------------------------------------------------------
// Verifier

DworkVerifier::DworkVerifier(DworkTuple tuple, VerifyOptions opts) : tuple_(std::move(tuple)), opts_(opts) {
  tuple_.validate();
  if (opts_.points < 1) throw InvalidArgument("need at least one evaluation point");
}

DworkVerifier::~DworkVerifier() = default;
DworkVerifier::DworkVerifier(DworkVerifier&&) noexcept = default;

const GhostSequence& DworkVerifier::ghost_sequence() {
  if (!seq_) seq_ = std::make_unique<GhostSequence>(tuple_);
  return *seq_;
}

std::vector<std::vector<UnramifiedElement>> random_unit_points(const UnramifiedRing& ring, int n, int count,
                                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> dist(0, ring.base().modulus() - 1);
  std::vector<std::vector<UnramifiedElement>> pts;
  for (int k = 0; k < count; ++k) {
    std::vector<UnramifiedElement> pt;
    while (static_cast<int>(pt.size()) < n) {
      std::vector<Residue> c(static_cast<std::size_t>(ring.degree()));
      for (auto& x : c) x = dist(rng);
      auto a = ring.from_coords(c);
      if (a.is_unit()) pt.push_back(a);
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

std::vector<std::vector<UnramifiedElement>> DworkVerifier::sample_points(const UnramifiedRing& ring) const {
  return random_unit_points(ring, tuple_.layout.n, opts_.points, opts_.seed);
}

CongruenceReport DworkVerifier::base_report(const std::string& name, int s) const {
  CongruenceReport rep;
  rep.check = name;
  rep.mode = opts_.mode;
  rep.param("p", static_cast<std::int64_t>(tuple_.p)).param("n", tuple_.layout.n).param("g", tuple_.g()).param("s", s);
  return rep;
}

namespace {

void require_level(const DworkTuple& t, int s, int lo) {
  if (s < lo || s > t.max_level())
    throw InvalidArgument("level s=" + std::to_string(s) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(t.max_level()) + "]");
}

}  // namespace

/// Runs body(backend) -> (lhs, rhs) in the configured mode and compares modulo p^claimed.
template <class Body>
static CongruenceReport run_matrix_check(DworkVerifier& ver, CongruenceReport rep, int claimed, Body&& body) {
  const DworkTuple& t = ver.tuple();
  const int M = std::max(claimed, 1) + ver.options().precision_guard;
  if (ver.options().mode == Mode::Symbolic) {
    SymbolicHw b(ver.ghost_sequence(), M);
    auto [lhs, rhs] = body(b);
    CongruenceReport c = compare_matrices(lhs, rhs, t.p, M, claimed);
    rep.claimed_exponent = c.claimed_exponent;
    rep.measured_valuation = c.measured_valuation;
    rep.pass = c.pass;
    rep.witness = c.witness;
    return rep;
  }
  auto ring = std::make_shared<UnramifiedRing>(ModulusContext(t.p, M), ver.options().extension_degree);
  const auto points = ver.sample_points(*ring);
  rep.pass = true;
  int idx = 0;
  for (const auto& pt : points) {
    EvalHw b(t, pt);
    auto [lhs, rhs] = body(b);
    CongruenceReport c = compare_matrices(lhs, rhs, claimed);
    if (c.witness) c.witness = "point " + std::to_string(idx) + " " + *c.witness;
    rep.merge(c);
    ++idx;
  }
  rep.note("points", std::to_string(points.size()));
  return rep;
}

CongruenceReport DworkVerifier::ghost_divisibility(int s) {
  if (s < 0 || s > tuple_.l()) throw InvalidArgument("ghost level out of range");
  CongruenceReport rep = base_report("ghost_divisibility", s);
  const int M = std::max(s, 1) + opts_.precision_guard;
  if (opts_.mode == Mode::Symbolic) {
    ModulusContext ctx(tuple_.p, M);
    const ValuationScan scan = ghost_sequence().V(s).scan_valuation(ctx, s);
    rep.set_valuation(s, scan.min);
    if (scan.witness)
      rep.witness = "monomial " + monomial_to_string(*scan.witness, tuple_.layout) + " valuation " +
                    std::to_string(scan.witness_valuation->value);
    rep.note("coefficients", std::to_string(scan.coefficients));
    return rep;
  }
  UnramifiedRing ring(ModulusContext(tuple_.p, M), opts_.extension_degree);
  PadicValuation best{M, true};
  int idx = 0;
  for (const auto& pt : sample_points(ring)) {
    EvalHw b(tuple_, pt);
    const UPoly& v = b.source({HwSource::V, s, 0}, make_jet_point(pt)).part(0);
    for (std::int64_t k = v.low(); k <= v.high(); ++k) {
      const PadicValuation val = valuation(v.coeff(k));
      if (val.value < best.value) best = val;
      if (!rep.witness && val.value < s)
        rep.witness = "point " + std::to_string(idx) + " t^" + std::to_string(k) + " valuation " + std::to_string(val.value);
    }
    ++idx;
  }
  rep.set_valuation(s, best);
  rep.note("points", std::to_string(idx));
  return rep;
}

CongruenceReport DworkVerifier::newton_inclusion(int s, const std::vector<LatticePolytopeT>& declared) {
  if (s < 0 || s > tuple_.l()) throw InvalidArgument("ghost level out of range");
  if (tuple_.layout.r != 1) throw DimensionUnsupported("Newton inclusion is checked for r = 1");
  CongruenceReport rep = base_report("newton_inclusion", s);
  rep.mode = Mode::Symbolic;
  std::vector<LatticePolytopeT> parts;
  std::vector<std::int64_t> scales;
  for (int i = 0; i <= s; ++i) {
    if (!declared.empty()) {
      parts.push_back(declared.at(static_cast<std::size_t>(i)));
    } else {
      const auto [lo, hi] = tuple_.lambda[static_cast<std::size_t>(i)].t_bounds();
      parts.push_back(LatticePolytopeT::interval(lo, hi));
    }
    scales.push_back(static_cast<std::int64_t>(ipow(tuple_.p, tuple_.k(i))));
  }
  const LatticePolytopeT target = scaled_interval_sum(parts, scales);
  const auto w = ghost_sequence().V(s).nonzero_outside_t(target.lo[0], target.hi[0]);
  rep.pass = !w.has_value();
  if (w) rep.witness = "monomial " + monomial_to_string(*w, tuple_.layout);
  rep.note("interval", "[" + std::to_string(target.lo[0]) + ", " + std::to_string(target.hi[0]) + "]");
  return rep;
}

CongruenceReport DworkVerifier::hw_factorization_identity(int s) {
  require_level(tuple_, s, 0);
  CongruenceReport rep = base_report("hw_factorization_identity", s);
  auto terms = [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    const int k1 = tuple_.k(s + 1);
    Matrix<T> lhs = b.hw({k1, 0, s + 1, {HwSource::W, s, 0}, 0});
    Matrix<T> rhs = b.hw({k1, 0, s + 1, {HwSource::V, s, 0}, 0});
    for (int j = 1; j <= s; ++j) {
      const int kj = tuple_.k(j);
      rhs = rhs + b.hw({kj, 0, j, {HwSource::V, j - 1, 0}, 0}) * b.hw({k1 - kj, j, s + 1, {HwSource::W, s, j}, kj});
    }
    return std::make_pair(lhs, rhs);
  };
  if (opts_.mode == Mode::Symbolic) {
    // Exact over Z: compare unreduced polynomials.
    const GhostSequence& seq = ghost_sequence();
    SymbolicHw b(seq, 1);
    const int k1 = tuple_.k(s + 1);
    Matrix<LaurentPoly> lhs = b.exact({k1, 0, s + 1, {HwSource::W, s, 0}, 0});
    Matrix<LaurentPoly> rhs = b.exact({k1, 0, s + 1, {HwSource::V, s, 0}, 0});
    for (int j = 1; j <= s; ++j) {
      const int kj = tuple_.k(j);
      rhs = rhs + b.exact({kj, 0, j, {HwSource::V, j - 1, 0}, 0}) * b.exact({k1 - kj, j, s + 1, {HwSource::W, s, j}, kj});
    }
    rep.pass = true;
    for (std::size_t i = 0; i < lhs.rows() && rep.pass; ++i)
      for (std::size_t j = 0; j < lhs.cols() && rep.pass; ++j)
        if (!(lhs(i, j) == rhs(i, j))) {
          rep.pass = false;
          const LaurentPoly d = lhs(i, j) - rhs(i, j);
          rep.witness = entry_name(i, j) + " monomial " + monomial_to_string(d.leading_term().mono, d.layout());
        }
    rep.note("identity", "exact over Z");
    return rep;
  }
  const int M = 1 + opts_.precision_guard;
  return run_matrix_check(*this, rep, M, terms);
}

CongruenceReport DworkVerifier::mod_p_factorization(int s) {
  require_level(tuple_, s, 0);
  CongruenceReport rep = base_report("mod_p_factorization", s);
  return run_matrix_check(*this, rep, 1, [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    Matrix<T> lhs = b.hw({tuple_.k(s + 1), 0, s + 1, {HwSource::W, s, 0}, 0});
    Matrix<T> rhs = Matrix<T>::identity(static_cast<std::size_t>(tuple_.g()), b.one());
    for (int j = 0; j <= s; ++j)
      rhs = rhs * b.hw({tuple_.e[static_cast<std::size_t>(j)], j, j + 1, {HwSource::W, j, j}, tuple_.k(j)});
    return std::make_pair(lhs, rhs);
  });
}

namespace {

struct RatioSpecs {
  HwSpec F1, F2, G1, G2;
  bool g2_identity;
};

RatioSpecs ratio_specs(const DworkTuple& t, int s) {
  RatioSpecs r;
  r.F1 = {t.k(s + 1), 0, s + 1, {HwSource::W, s, 0}, 0};
  r.F2 = {t.k(1, s + 1), 1, s + 1, {HwSource::W, s, 1}, t.k(1)};
  r.G1 = {t.k(s), 0, s, {HwSource::W, s - 1, 0}, 0};
  r.g2_identity = s == 1;
  r.G2 = {t.k(1, s), 1, s, {HwSource::W, s - 1, 1}, t.k(1)};
  return r;
}

}  // namespace

CongruenceReport DworkVerifier::ratio_congruence(int s) {
  require_level(tuple_, s, 1);
  CongruenceReport rep = base_report("ratio_congruence", s);
  const RatioSpecs sp = ratio_specs(tuple_, s);
  bool f2_unit_somewhere = false;
  rep = run_matrix_check(*this, rep, s, [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    const std::size_t g = static_cast<std::size_t>(tuple_.g());
    Matrix<T> F1 = b.hw(sp.F1), F2 = b.hw(sp.F2), G1 = b.hw(sp.G1);
    Matrix<T> G2 = sp.g2_identity ? Matrix<T>::identity(g, b.one()) : b.hw(sp.G2);
    const T dF2 = determinant(F2), dG2 = determinant(G2);
    if constexpr (std::is_same_v<T, LaurentPoly>) {
      const ValuationScan sc = dF2.scan_valuation(tuple_.p, 1, 1);
      if (dF2.is_zero() || sc.min.value >= 1) throw SingularModP("det of the twisted tail matrix vanishes mod p");
      f2_unit_somewhere = true;
    } else {
      if (dF2.is_unit()) f2_unit_somewhere = true;
    }
    return std::make_pair(Matrix<T>(F1 * adjugate(F2) * dG2), Matrix<T>(G1 * adjugate(G2) * dF2));
  });
  rep.note("tail_det_nonzero_mod_p", f2_unit_somewhere ? "yes" : "not observed");
  return rep;
}

CongruenceReport DworkVerifier::det_congruence(int s) {
  require_level(tuple_, s, 1);
  CongruenceReport rep = base_report("det_congruence", s);
  const RatioSpecs sp = ratio_specs(tuple_, s);
  return run_matrix_check(*this, rep, s, [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    const std::size_t g = static_cast<std::size_t>(tuple_.g());
    Matrix<T> G2 = sp.g2_identity ? Matrix<T>::identity(g, b.one()) : b.hw(sp.G2);
    Matrix<T> lhs(1, 1, b.one()), rhs(1, 1, b.one());
    lhs(0, 0) = determinant(b.hw(sp.F1)) * determinant(G2);
    rhs(0, 0) = determinant(b.hw(sp.G1)) * determinant(b.hw(sp.F2));
    return std::make_pair(lhs, rhs);
  });
}

CongruenceReport DworkVerifier::derivation_congruence(int s, int ell, int v) {
  require_level(tuple_, s, 1);
  if (ell < 0) throw InvalidArgument("ell must be >= 0");
  if (v < 0 || v >= tuple_.layout.n) throw InvalidArgument("variable index out of range");
  CongruenceReport rep = base_report("derivation_congruence", s);
  rep.param("ell", ell).param("v", v + 1);
  const HwSpec hi{tuple_.k(s + 1), 0, s + 1, {HwSource::W, s, 0}, ell};
  const HwSpec lo{tuple_.k(s), 0, s, {HwSource::W, s - 1, 0}, ell};
  return run_matrix_check(*this, rep, s + ell, [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    Matrix<T> Xs = b.hw_d(hi, v), Ys = b.hw(hi), Xl = b.hw_d(lo, v), Yl = b.hw(lo);
    return std::make_pair(Matrix<T>(Xs * adjugate(Ys) * determinant(Yl)), Matrix<T>(Xl * adjugate(Yl) * determinant(Ys)));
  });
}

CongruenceReport DworkVerifier::second_derivation_congruence(int s, int u, int v) {
  require_level(tuple_, s, 1);
  if (u < 0 || v < 0 || u >= tuple_.layout.n || v >= tuple_.layout.n) throw InvalidArgument("variable index out of range");
  CongruenceReport rep = base_report("second_derivation_congruence", s);
  rep.param("u", u + 1).param("v", v + 1);
  const HwSpec hi{tuple_.k(s + 1), 0, s + 1, {HwSource::W, s, 0}, 0};
  const HwSpec lo{tuple_.k(s), 0, s, {HwSource::W, s - 1, 0}, 0};
  return run_matrix_check(*this, rep, s, [&](auto& b) {
    using T = typename std::decay_t<decltype(b)>::Value;
    Matrix<T> Xs = b.hw_dd(hi, u, v), Ys = b.hw(hi), Xl = b.hw_dd(lo, u, v), Yl = b.hw(lo);
    return std::make_pair(Matrix<T>(Xs * adjugate(Ys) * determinant(Yl)), Matrix<T>(Xl * adjugate(Yl) * determinant(Ys)));
  });
}

}  // namespace dkz
