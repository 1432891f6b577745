#include "dkz/kz.hpp"

#include <json.hpp>

namespace dkz {

namespace {

std::uint64_t ipow(std::uint64_t p, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) throw ExponentOverflow("p^k overflows 62 bits");
    r *= p;
  }
  return r;
}

mpz_class binom(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

LaurentPoly linear_factor() { return LaurentPoly::parse("t1 + -1 * z1", kFactorLayout); }

// Collects valuations of quantities that must vanish mod p^claimed.
struct Acc {
  std::uint64_t p;
  int cap;
  int claimed;
  PadicValuation min;
  std::optional<std::string> witness;

  Acc(std::uint64_t p_, int cap_, int claimed_) : p(p_), cap(cap_), claimed(claimed_), min{cap_, true} {}

  void take(PadicValuation v, const std::function<std::string()>& label) {
    if (v.value < min.value) min = v;
    if (!witness && v.value < claimed) witness = label() + " valuation " + std::to_string(v.value);
  }
  void add(const LaurentPoly& x, const std::function<std::string()>& label) {
    if (x.is_zero()) return;
    const ValuationScan sc = x.scan_valuation(p, cap, claimed);
    take(sc.min, [&] {
      return label() + (sc.witness ? " monomial " + monomial_to_string(*sc.witness, x.layout()) : std::string());
    });
  }
  void add(const UnramifiedElement& x, const std::function<std::string()>& label) { take(valuation(x), label); }
  void finish(CongruenceReport& rep) const {
    rep.set_valuation(claimed, min);
    if (witness) rep.witness = witness;
  }
};

std::string ij(const char* a, int x, const char* b, int y) {
  return std::string(a) + "=" + std::to_string(x + 1) + " " + b + "=" + std::to_string(y + 1);
}

CongruenceReport kz_report(const KZParams& P, const std::string& name, int s, Mode mode) {
  CongruenceReport rep;
  rep.check = name;
  rep.mode = mode;
  rep.param("p", static_cast<std::int64_t>(P.p)).param("q", static_cast<std::int64_t>(P.q)).param("g", P.g);
  if (s > 0) rep.param("s", s);
  return rep;
}

/// Runs body(backend, acc) symbolically or at each sample point and folds the results into rep.
template <class Body>
CongruenceReport run_kz(const KZParams& P, const KzCheckOptions& o, CongruenceReport rep, int claimed, bool exact,
                        Body&& body) {
  const int M = std::max(claimed, 1) + o.precision_guard;
  if (o.mode == Mode::Symbolic) {
    KzSymbolic b(P, exact ? 0 : M);
    Acc acc{P.p, M, claimed};
    body(b, acc);
    acc.finish(rep);
    return rep;
  }
  UnramifiedRing ring(ModulusContext(P.p, M), o.extension_degree);
  const auto points = random_unit_points(ring, P.n, o.points, o.seed);
  CongruenceReport total = rep;
  total.pass = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    KzPoint b(P, points[k]);
    Acc acc{P.p, M, claimed};
    body(b, acc);
    CongruenceReport one = rep;
    acc.finish(one);
    if (one.witness) one.witness = "point " + std::to_string(k) + " " + *one.witness;
    total.merge(one);
  }
  total.note("points", std::to_string(points.size()));
  return total;
}

template <class T>
void add_matrix_diff(Acc& acc, const Matrix<T>& a, const Matrix<T>& b, const std::string& what) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      acc.add(a(i, j) - b(i, j), [&] { return what + " entry(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; });
}

Monomial z_monomial(const KZParams& P, const std::vector<std::int64_t>& exps) {
  Monomial m;
  for (int k = 0; k < P.n; ++k) m[1 + k] = checked_exponent(exps[static_cast<std::size_t>(k)]);
  return m;
}

/// (z_1 ... z_top)^N as exponent vector (top is 1-based, may be 0).
std::vector<std::int64_t> prefix_power(const KZParams& P, int top, std::int64_t N) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(P.n), 0);
  for (int k = 0; k < top && k < P.n; ++k) e[static_cast<std::size_t>(k)] = N;
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters and polynomials

std::uint64_t KZParams::pe(int s) const { return ipow(p, static_cast<std::uint64_t>(e) * static_cast<std::uint64_t>(s)); }
std::uint64_t KZParams::N(int s) const { return (pe(s) - 1) / q; }

std::int64_t KZParams::d_phi() const {
  const auto qq = static_cast<std::int64_t>(q);
  return static_cast<std::int64_t>(N(1)) * (qq * g * g + 2 * g - qq * g) / 2;
}

std::int64_t KZParams::d_M() const { return d_phi() - static_cast<std::int64_t>(g) * (g + 1) / 2; }

KZParams make_params(std::uint64_t p, std::uint64_t q, int g, int s_max) {
  if (!is_prime(p)) throw InvalidParams("p not prime");
  if (!is_prime(q)) throw InvalidParams("q not prime");
  if (p <= q) throw InvalidParams("p > q fails");
  if (g < 1) throw InvalidParams("g >= 1 fails");
  if (s_max < 1) throw InvalidParams("s_max >= 1 fails");
  KZParams P;
  P.p = p;
  P.q = q;
  P.g = g;
  P.s_max = s_max;
  P.n = g * static_cast<int>(q) + 1;
  std::uint64_t x = p % q;
  P.e = 1;
  while (x != 1) {
    x = x * (p % q) % q;
    ++P.e;
  }
  try {
    (void)P.pe(s_max + 1);  // largest level any check touches
  } catch (const ExponentOverflow&) {
    throw InvalidParams("p^{e(s_max+1)} exceeds 62 bits");
  }
  if (P.pe(1) <= static_cast<std::uint64_t>(P.n)) throw InvalidParams("p^e > n fails");
  if (p + 2 < static_cast<std::uint64_t>(P.n) + q) throw InvalidParams("p >= n + q - 2 fails");
  return P;
}

MasterPolynomial master_polynomial(const KZParams& P, int s) {
  if (s < 1) throw InvalidArgument("master polynomial needs s >= 1");
  return {s, FactoredPoly::symmetric_product(P.layout(), linear_factor()).power(P.N(s))};
}

FactoredPoly master_over_linear(const KZParams& P, int s, int i) {
  if (s < 1) throw InvalidArgument("master polynomial needs s >= 1");
  if (i < 0 || i >= P.n) throw InvalidArgument("index out of range");
  const LaurentPoly full = linear_factor().power(P.N(s));
  const LaurentPoly cut = linear_factor().power(P.N(s) - 1);
  std::vector<LaurentPoly> f(static_cast<std::size_t>(P.n), full);
  f[static_cast<std::size_t>(i)] = cut;
  return FactoredPoly::product(P.layout(), f);
}

SolutionMatrix hypergeometric_solutions(const KZParams& P, int s) {
  SolutionMatrix out{s, Matrix<LaurentPoly>(static_cast<std::size_t>(P.n), static_cast<std::size_t>(P.g),
                                            LaurentPoly(P.layout()))};
  const auto pe = static_cast<std::int64_t>(P.pe(s));
  for (int k = 0; k < P.n; ++k) {
    const FactoredPoly f = master_over_linear(P, s, k);
    for (int l = 1; l <= P.g; ++l) out.I(static_cast<std::size_t>(k), static_cast<std::size_t>(l - 1)) = f.coeff_t(l * pe - 1);
  }
  return out;
}

int GaudinData::omega(int i, int j, int a, int b) {
  if (i == j) return 0;
  if ((a == i && b == i) || (a == j && b == j)) return -1;
  if ((a == i && b == j) || (a == j && b == i)) return 1;
  return 0;
}

DworkTuple kz_tuple(const KZParams& P, int l) {
  DworkTuple t;
  t.p = P.p;
  t.layout = P.layout();
  t.e.assign(static_cast<std::size_t>(l + 1), P.e);
  t.delta.assign(static_cast<std::size_t>(l + 2), interval_index_set(1, P.g));
  t.lambda.assign(static_cast<std::size_t>(l + 1), master_polynomial(P, 1).factored);
  return t;
}

HasseWittMatrix hasse_witt_phi(const KZParams& P, int s) {
  const IndexSet G = interval_index_set(1, P.g);
  return hasse_witt(P.p, P.e * s, G, G, master_polynomial(P, s).factored);
}

// ---------------------------------------------------------------------------
// Symbolic backend

KzSymbolic::KzSymbolic(const KZParams& P, int precision) : P_(P) {
  if (precision > 0) mpz_ui_pow_ui(modulus_.get_mpz_t(), P.p, static_cast<unsigned long>(precision));
}

const Matrix<LaurentPoly>& KzSymbolic::A_exact(int s) {
  auto it = a_.find(s);
  if (it == a_.end()) it = a_.emplace(s, hasse_witt_phi(P_, s).entries).first;
  return it->second;
}

const Matrix<LaurentPoly>& KzSymbolic::I_exact(int s) {
  auto it = i_.find(s);
  if (it == i_.end()) it = i_.emplace(s, hypergeometric_solutions(P_, s).I).first;
  return it->second;
}

Matrix<LaurentPoly> KzSymbolic::A(int s) {
  return A_exact(s).map([&](const LaurentPoly& f) { return red(f); });
}
Matrix<LaurentPoly> KzSymbolic::A_d(int s, int v) {
  return A_exact(s).map([&](const LaurentPoly& f) { return red(f.derivative_z(v)); });
}
Matrix<LaurentPoly> KzSymbolic::A_dd(int s, int u, int v) {
  return A_exact(s).map([&](const LaurentPoly& f) { return red(f.derivative_z(v).derivative_z(u)); });
}
Matrix<LaurentPoly> KzSymbolic::I(int s) {
  return I_exact(s).map([&](const LaurentPoly& f) { return red(f); });
}
Matrix<LaurentPoly> KzSymbolic::I_d(int s, int j) {
  return I_exact(s).map([&](const LaurentPoly& f) { return red(f.derivative_z(j)); });
}
LaurentPoly KzSymbolic::z(int i) const { return red(LaurentPoly::z_var(P_.layout(), i)); }
LaurentPoly KzSymbolic::one() const { return LaurentPoly::constant(P_.layout(), 1, modulus_); }
LaurentPoly KzSymbolic::constant(std::int64_t c) const { return red(LaurentPoly::constant(P_.layout(), c)); }

// ---------------------------------------------------------------------------
// Point backend

KzPoint::KzPoint(const KZParams& P, std::vector<UnramifiedElement> a) : P_(P), a_(std::move(a)) {
  if (static_cast<int>(a_.size()) != P.n) throw InvalidArgument("point dimension must equal n");
}

const UPoly& KzPoint::phi(int s) {
  auto it = phi_.find(s);
  if (it != phi_.end()) return it->second;
  if (!phi_.count(0)) {
    const UnramifiedRing& R = a_[0].ring();
    UPoly base = UPoly::constant(R.one());
    for (const auto& x : a_) base = base * (UPoly::monomial(R.one(), 1) - UPoly::constant(x));
    phi_.emplace(0, std::move(base));
  }
  return phi_.emplace(s, phi_.at(0).power(P_.N(s))).first->second;
}

const UPoly& KzPoint::phi_over(int s, int i) {
  const auto key = std::make_tuple(s, i, -1);
  auto it = div_.find(key);
  if (it != div_.end()) return it->second;
  UPoly q = phi(s).divide_linear(a_.at(static_cast<std::size_t>(i)));
  return div_.emplace(key, std::move(q)).first->second;
}

const UPoly& KzPoint::phi_over2(int s, int i, int j) {
  if (i > j) std::swap(i, j);
  const auto key = std::make_tuple(s, i, j);
  auto it = div_.find(key);
  if (it != div_.end()) return it->second;
  UPoly q = phi_over(s, i).divide_linear(a_.at(static_cast<std::size_t>(j)));
  return div_.emplace(key, std::move(q)).first->second;
}

Matrix<UnramifiedElement> KzPoint::hw_of(int s, const UPoly& f, const UnramifiedElement& scale) const {
  const auto g = static_cast<std::size_t>(P_.g);
  const auto pe = static_cast<std::int64_t>(P_.pe(s));
  Matrix<UnramifiedElement> out(g, g, a_[0].ring().zero());
  for (std::size_t u = 1; u <= g; ++u)
    for (std::size_t v = 1; v <= g; ++v)
      out(u - 1, v - 1) = scale * f.coeff(pe * static_cast<std::int64_t>(v) - static_cast<std::int64_t>(u));
  return out;
}

Matrix<UnramifiedElement> KzPoint::A(int s) { return hw_of(s, phi(s), one()); }

Matrix<UnramifiedElement> KzPoint::A_d(int s, int v) {
  const UnramifiedRing& R = a_[0].ring();
  return hw_of(s, phi_over(s, v), -R.from_mpz(mpz_class(std::to_string(P_.N(s)))));
}

Matrix<UnramifiedElement> KzPoint::A_dd(int s, int u, int v) {
  const UnramifiedRing& R = a_[0].ring();
  const mpz_class N(std::to_string(P_.N(s)));
  const mpz_class c = u == v ? mpz_class(N * (N - 1)) : mpz_class(N * N);
  return hw_of(s, phi_over2(s, u, v), R.from_mpz(c));
}

Matrix<UnramifiedElement> KzPoint::I(int s) {
  const auto pe = static_cast<std::int64_t>(P_.pe(s));
  Matrix<UnramifiedElement> out(static_cast<std::size_t>(P_.n), static_cast<std::size_t>(P_.g), a_[0].ring().zero());
  for (int k = 0; k < P_.n; ++k) {
    const UPoly& f = phi_over(s, k);
    for (int l = 1; l <= P_.g; ++l) out(static_cast<std::size_t>(k), static_cast<std::size_t>(l - 1)) = f.coeff(l * pe - 1);
  }
  return out;
}

Matrix<UnramifiedElement> KzPoint::I_d(int s, int j) {
  const UnramifiedRing& R = a_[0].ring();
  const mpz_class N(std::to_string(P_.N(s)));
  const auto pe = static_cast<std::int64_t>(P_.pe(s));
  Matrix<UnramifiedElement> out(static_cast<std::size_t>(P_.n), static_cast<std::size_t>(P_.g), R.zero());
  for (int k = 0; k < P_.n; ++k) {
    // d/dz_j of Phi/(t - z_k): -N Phi/((t - z_k)(t - z_j)), or -(N-1) Phi/(t - z_j)^2 when k = j
    const UnramifiedElement c = R.from_mpz(k == j ? -(N - 1) : mpz_class(-N));
    const UPoly& f = phi_over2(s, k, j);
    for (int l = 1; l <= P_.g; ++l)
      out(static_cast<std::size_t>(k), static_cast<std::size_t>(l - 1)) = c * f.coeff(l * pe - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

CongruenceReport check_kz_solution(const KZParams& P, int s, const KzCheckOptions& opts) {
  const int claimed = P.e * s;
  CongruenceReport rep = kz_report(P, "kz_solution", s, opts.mode);
  return run_kz(P, opts, rep, claimed, true, [&](auto& b, Acc& acc) {
    using T = typename std::decay_t<decltype(b)>::Value;
    const auto I = b.I(s);
    const T q = b.constant(static_cast<std::int64_t>(P.q));
    const auto n = static_cast<std::size_t>(P.n);
    for (int l = 0; l < P.g; ++l) {
      std::vector<T> v;
      for (std::size_t k = 0; k < n; ++k) v.push_back(I(k, static_cast<std::size_t>(l)));
      T sum = zero_like(v[0]);
      for (const auto& x : v) sum = sum + x;
      acc.add(sum, [&] { return "column sum l=" + std::to_string(l + 1); });
    }
    for (int i = 0; i < P.n; ++i) {
      const auto dI = b.I_d(s, i);
      // D_i = prod_{j != i} (z_i - z_j); R_ij = D_i / (z_i - z_j)
      std::vector<T> R(n, b.one());
      T D = b.one();
      for (int j = 0; j < P.n; ++j) {
        if (j == i) continue;
        const T diff = b.z(i) - b.z(j);
        D = D * diff;
        for (int k = 0; k < P.n; ++k)
          if (k != i && k != j) R[static_cast<std::size_t>(k)] = R[static_cast<std::size_t>(k)] * diff;
      }
      for (int l = 0; l < P.g; ++l) {
        std::vector<T> v;
        for (std::size_t k = 0; k < n; ++k) v.push_back(I(k, static_cast<std::size_t>(l)));
        for (int k = 0; k < P.n; ++k) {
          T E = q * D * dI(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
          for (int j = 0; j < P.n; ++j)
            if (j != i && (k == i || k == j)) E = E - R[static_cast<std::size_t>(j)] * GaudinData::apply(i, j, v, k);
          acc.add(E, [&] { return ij("i", i, "l", l) + " component " + std::to_string(k + 1); });
        }
      }
    }
  });
}

CongruenceReport check_kz_identities(const KZParams& P, int s) {
  CongruenceReport rep = kz_report(P, "kz_identities", s, Mode::Symbolic);
  const VarLayout L = P.layout();
  const mpz_class N(std::to_string(P.N(s)));
  const LaurentPoly phi = master_polynomial(P, s).expanded();
  std::vector<LaurentPoly> v;
  for (int k = 0; k < P.n; ++k) v.push_back(master_over_linear(P, s, k).expand());
  rep.pass = true;
  LaurentPoly sum(L);
  for (const auto& x : v) sum += x;
  if (!(sum.scaled(N) == phi.derivative_t(0))) {
    rep.pass = false;
    rep.witness = "sum identity";
  }
  for (int i = 0; i < P.n && rep.pass; ++i) {
    LaurentPoly D = LaurentPoly::constant(L, 1);
    std::vector<LaurentPoly> R(static_cast<std::size_t>(P.n), LaurentPoly::constant(L, 1));
    for (int j = 0; j < P.n; ++j) {
      if (j == i) continue;
      const LaurentPoly diff = LaurentPoly::z_var(L, i) - LaurentPoly::z_var(L, j);
      D = D * diff;
      for (int k = 0; k < P.n; ++k)
        if (k != i && k != j) R[static_cast<std::size_t>(k)] = R[static_cast<std::size_t>(k)] * diff;
    }
    for (int k = 0; k < P.n && rep.pass; ++k) {
      LaurentPoly lhs = D * v[static_cast<std::size_t>(k)].derivative_z(i);
      for (int j = 0; j < P.n; ++j)
        if (j != i && (k == i || k == j)) lhs += (R[static_cast<std::size_t>(j)] * GaudinData::apply(i, j, v, k)).scaled(N);
      const LaurentPoly rhs = k == i ? D * -v[static_cast<std::size_t>(i)].derivative_t(0) : LaurentPoly(L);
      if (!(lhs == rhs)) {
        rep.pass = false;
        rep.witness = "Psi identity " + ij("i", i, "component", k);
      }
    }
  }
  rep.note("identity", "exact over Z");
  return rep;
}

std::vector<LeadingTermData> leading_term_solutions(const KZParams& P) {
  const auto N = static_cast<std::int64_t>(P.N(1));
  const auto q = static_cast<int>(P.q);
  std::vector<LeadingTermData> out;
  for (int l = 1; l <= P.g; ++l) {
    LeadingTermData d;
    d.ell = l;
    d.binomial = binom(static_cast<std::uint64_t>(N - 1), static_cast<std::uint64_t>(l - 1));
    const int top = q * (P.g - l) + 1;  // 1-based
    d.scaled_vector.assign(static_cast<std::size_t>(P.n), 0);
    d.scaled_vector[static_cast<std::size_t>(top - 1)] = d.binomial * l;
    for (int k = top; k < P.n; ++k) d.scaled_vector[static_cast<std::size_t>(k)] = d.binomial * N;
    auto e = prefix_power(P, top, N);
    e[static_cast<std::size_t>(top - 1)] -= l;
    d.monomial = z_monomial(P, e);
    out.push_back(std::move(d));
  }
  return out;
}

CongruenceReport check_leading_terms(const KZParams& P) {
  CongruenceReport rep = kz_report(P, "leading_terms", 1, Mode::Symbolic);
  rep.pass = true;
  const auto I = hypergeometric_solutions(P, 1).I;
  for (const auto& d : leading_term_solutions(P)) {
    const auto col = static_cast<std::size_t>(d.ell - 1);
    std::optional<Monomial> lead;
    for (int k = 0; k < P.n; ++k) {
      const LaurentPoly& f = I(static_cast<std::size_t>(k), col);
      if (!f.is_zero() && (!lead || f.leading_term().mono > *lead)) lead = f.leading_term().mono;
    }
    const std::string tag = "l=" + std::to_string(d.ell);
    if (!lead || *lead != d.monomial) {
      rep.pass = false;
      if (!rep.witness) rep.witness = tag + " leading monomial " + (lead ? monomial_to_string(*lead, P.layout()) : "none");
      continue;
    }
    int sign = 0;
    bool ok = true;
    for (int k = 0; k < P.n; ++k) {
      const mpz_class c = I(static_cast<std::size_t>(k), col).coeff(d.monomial) * d.ell;
      const mpz_class& want = d.scaled_vector[static_cast<std::size_t>(k)];
      if (want == 0) {
        ok = ok && c == 0;
        continue;
      }
      const int sg = c == want ? 1 : (c == -want ? -1 : 0);
      if (sg == 0 || (sign != 0 && sg != sign)) ok = false;
      sign = sg;
    }
    const bool unit = mpz_divisible_ui_p(d.binomial.get_mpz_t(), P.p) == 0;
    rep.note("sign_" + tag, sign > 0 ? "+" : "-");
    rep.note("binomial_" + tag, d.binomial.get_str() + (unit ? " unit mod p" : " divisible by p"));
    if (!ok || !unit) {
      rep.pass = false;
      if (!rep.witness) rep.witness = tag + (ok ? " binomial not a unit" : " coefficient vector mismatch");
    }
  }
  return rep;
}

MinorData minor_M(const KZParams& P) {
  const auto I = hypergeometric_solutions(P, 1).I;
  std::vector<std::size_t> rows, cols;
  for (int l = 1; l <= P.g; ++l) {
    rows.push_back(static_cast<std::size_t>(static_cast<int>(P.q) * (P.g - l)));
    cols.push_back(static_cast<std::size_t>(l - 1));
  }
  MinorData d;
  d.minor = determinant(I.select(rows, cols));
  d.degree = d.minor.homogeneous_degree();
  return d;
}

namespace {

bool nonzero_mod_p(const LaurentPoly& f, std::uint64_t p) {
  return !f.is_zero() && f.scan_valuation(p, 1, 1).min.value == 0;
}

}  // namespace

CongruenceReport check_minor(const KZParams& P) {
  CongruenceReport rep = kz_report(P, "minor_M", 1, Mode::Symbolic);
  const MinorData d = minor_M(P);
  rep.pass = true;
  auto fail = [&](const std::string& w) {
    rep.pass = false;
    if (!rep.witness) rep.witness = w;
  };
  if (d.minor.is_zero()) {
    fail("minor is zero");
    return rep;
  }
  rep.note("degree", d.degree ? std::to_string(*d.degree) : "not homogeneous");
  rep.note("d_M", std::to_string(P.d_M()));
  if (!d.degree) fail("not homogeneous");
  else if (*d.degree != P.d_M()) fail("degree " + std::to_string(*d.degree));
  std::vector<std::int64_t> e(static_cast<std::size_t>(P.n), 0);
  mpz_class c = 1;
  for (const auto& lt : leading_term_solutions(P)) {
    for (int k = 0; k < P.n; ++k) e[static_cast<std::size_t>(k)] += lt.monomial[1 + k];
    c *= lt.binomial;
  }
  const Term& lead = d.minor.leading_term();
  if (lead.mono != z_monomial(P, e)) fail("leading monomial " + monomial_to_string(lead.mono, P.layout()));
  else if (lead.coeff != c && lead.coeff != -c) fail("leading coefficient " + lead.coeff.get_str());
  else rep.note("sign", lead.coeff == c ? "+" : "-");
  if (!nonzero_mod_p(d.minor, P.p)) fail("minor vanishes mod p");
  return rep;
}

CongruenceReport det_phi1_check(const KZParams& P) {
  CongruenceReport rep = kz_report(P, "det_phi1", 1, Mode::Symbolic);
  rep.pass = true;
  auto fail = [&](const std::string& w) {
    rep.pass = false;
    if (!rep.witness) rep.witness = w;
  };
  const auto A = hasse_witt_phi(P, 1).entries;
  const auto N = static_cast<std::int64_t>(P.N(1));
  const int qg = static_cast<int>(P.q) * P.g;
  // Entrywise leading terms.
  for (int u = 1; u <= P.g; ++u)
    for (int v = 1; v <= P.g; ++v) {
      const int top = qg + 1 - static_cast<int>(P.q) * v;
      auto e = prefix_power(P, top, N);
      const int d = std::abs(v - u);
      if (v >= u) e[static_cast<std::size_t>(top - 1)] -= d;
      else e[static_cast<std::size_t>(top)] += d;
      const mpz_class c = binom(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(d));
      const LaurentPoly& f = A(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
      const std::string tag = "entry(" + std::to_string(u) + "," + std::to_string(v) + ")";
      if (f.is_zero()) {
        fail(tag + " is zero");
        continue;
      }
      const Term& lt = f.leading_term();
      if (lt.mono != z_monomial(P, e) || (lt.coeff != c && lt.coeff != -c))
        fail(tag + " leading term " + lt.coeff.get_str() + "*" + monomial_to_string(lt.mono, P.layout()));
    }
  if (P.g == 2) {
    // The g = 2 display writes the (1,1) entry as (z_1 ... z_{g+1})^N.
    const Term& lt = A(0, 0).leading_term();
    const bool general = lt.mono == z_monomial(P, prefix_power(P, qg + 1 - static_cast<int>(P.q), N));
    const bool display = lt.mono == z_monomial(P, prefix_power(P, P.g + 1, N));
    rep.note("entry_1_1_variant", general ? "general formula" : (display ? "g=2 display" : "neither"));
  }
  const LaurentPoly det = determinant(A);
  const auto deg = det.homogeneous_degree();
  rep.note("degree", deg ? std::to_string(*deg) : "not homogeneous");
  rep.note("d_phi", std::to_string(P.d_phi()));
  if (det.is_zero()) {
    fail("determinant is zero");
    return rep;
  }
  if (!deg) fail("determinant not homogeneous");
  else if (*deg != P.d_phi()) fail("determinant degree " + std::to_string(*deg));
  std::vector<std::int64_t> e(static_cast<std::size_t>(P.n), 0);
  for (int v = 1; v <= P.g; ++v) {
    const auto pv = prefix_power(P, qg + 1 - static_cast<int>(P.q) * v, N);
    for (int k = 0; k < P.n; ++k) e[static_cast<std::size_t>(k)] += pv[static_cast<std::size_t>(k)];
  }
  const Term& lead = det.leading_term();
  if (lead.mono != z_monomial(P, e) || (lead.coeff != 1 && lead.coeff != -1))
    fail("determinant leading term " + lead.coeff.get_str() + "*" + monomial_to_string(lead.mono, P.layout()));
  else rep.note("sign", lead.coeff > 0 ? "+" : "-");
  if (!nonzero_mod_p(det, P.p)) fail("determinant vanishes mod p");
  return rep;
}

std::vector<CongruenceReport> check_solution_congruences(const KZParams& P, int s, const KzCheckOptions& opts) {
  if (s < 1) throw InvalidArgument("solution congruences need s >= 1");
  std::vector<CongruenceReport> out;
  auto cross = [&](auto& b, Acc& acc, auto&& top, const std::string& what) {
    auto A1 = b.A(s + 1), A0 = b.A(s);
    auto lhs = top(s + 1) * adjugate(A1) * determinant(A0);
    auto rhs = top(s) * adjugate(A0) * determinant(A1);
    add_matrix_diff(acc, lhs, rhs, what);
  };
  out.push_back(run_kz(P, opts, kz_report(P, "solution_congruence", s, opts.mode), s, false, [&](auto& b, Acc& acc) {
    cross(b, acc, [&](int lvl) { return b.I(lvl); }, "I");
  }));
  for (int j = 0; j < P.n; ++j) {
    CongruenceReport rep = kz_report(P, "solution_congruence_d", s, opts.mode);
    rep.param("j", j + 1);
    out.push_back(run_kz(P, opts, rep, s, false, [&](auto& b, Acc& acc) {
      cross(b, acc, [&](int lvl) { return b.I_d(lvl, j); }, "dI");
    }));
  }
  out.push_back(check_gradient_identity(P, s, opts));
  return out;
}

CongruenceReport check_gradient_identity(const KZParams& P, int s, const KzCheckOptions& opts) {
  CongruenceReport rep = kz_report(P, "gradient_identity", s, opts.mode);
  const auto pe = static_cast<std::int64_t>(P.pe(s));
  const mpz_class N(std::to_string(P.N(s)));
  if (opts.mode == Mode::Symbolic) {
    const FactoredPoly phi = master_polynomial(P, s).factored;
    const auto I = hypergeometric_solutions(P, s).I;
    rep.pass = true;
    for (int l = 1; l <= P.g && rep.pass; ++l) {
      const LaurentPoly a = phi.coeff_t(l * pe - 1);
      for (int i = 0; i < P.n && rep.pass; ++i)
        if (!(a.derivative_z(i) == I(static_cast<std::size_t>(i), static_cast<std::size_t>(l - 1)).scaled(-N))) {
          rep.pass = false;
          rep.witness = ij("l", l - 1, "i", i);
        }
    }
    rep.note("identity", "exact over Z");
    return rep;
  }
  const int M = s + opts.precision_guard;
  UnramifiedRing ring(ModulusContext(P.p, M), opts.extension_degree);
  const auto points = random_unit_points(ring, P.n, opts.points, opts.seed);
  const FactoredPoly phi = master_polynomial(P, s).factored;
  Acc acc{P.p, M, M};
  for (std::size_t k = 0; k < points.size(); ++k) {
    KzPoint b(P, points[k]);
    const auto I = b.I(s);
    for (int i = 0; i < P.n; ++i) {
      const JetPoly f = evaluate(phi, make_jet_point(points[k], i));
      for (int l = 1; l <= P.g; ++l) {
        const UnramifiedElement grad = f.coeff(l * pe - 1).c[1];
        acc.add(grad + ring.from_mpz(N) * I(static_cast<std::size_t>(i), static_cast<std::size_t>(l - 1)),
                [&] { return "point " + std::to_string(k) + " " + ij("l", l - 1, "i", i); });
      }
    }
  }
  acc.finish(rep);
  rep.note("points", std::to_string(points.size()));
  return rep;
}

CongruenceReport check_mod_p_stability(const KZParams& P, int s, const KzCheckOptions& opts) {
  if (s < 1) throw InvalidArgument("stability needs s >= 1");
  return run_kz(P, opts, kz_report(P, "mod_p_stability", s, opts.mode), 1, false, [&](auto& b, Acc& acc) {
    auto As = b.A(s), A1 = b.A(1);
    add_matrix_diff(acc, b.I(s) * adjugate(As) * determinant(A1), b.I(1) * adjugate(A1) * determinant(As), "I");
  });
}

std::string describe_json(const KZParams& P) {
  nlohmann::ordered_json j;
  j["p"] = P.p;
  j["q"] = P.q;
  j["g"] = P.g;
  j["e"] = P.e;
  j["n"] = P.n;
  j["d_phi"] = P.d_phi();
  j["d_M"] = P.d_M();
  const auto nN = static_cast<std::int64_t>(P.n) * static_cast<std::int64_t>(P.N(1));
  const auto pe = static_cast<std::int64_t>(P.pe(1));
  nlohmann::ordered_json hw = nlohmann::ordered_json::array();
  for (int u = 1; u <= P.g; ++u) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int v = 1; v <= P.g; ++v) row.push_back(nN - (pe * v - u));
    hw.push_back(row);
  }
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (int l = 1; l <= P.g; ++l) cols.push_back(nN - l * pe);
  j["degrees"] = {{"t_degree_phi1", nN}, {"hasse_witt_phi1", hw}, {"solution_columns_s1", cols}};
  return j.dump();
}

}  // namespace dkz
