#include "dkz/laurent.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <unordered_map>

namespace dkz {

void VarLayout::validate() const {
  if (r < 1 || n < 1 || r + n > kMaxVars) {
    throw InvalidArgument("variable layout needs r >= 1, n >= 1, r + n <= " + std::to_string(kMaxVars));
  }
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int32_t x : m.e) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::int32_t checked_exponent(std::int64_t x) {
  if (x > INT32_MAX / 2 || x < INT32_MIN / 2) {
    throw ExponentOverflow("exponent out of range: " + std::to_string(x));
  }
  return static_cast<std::int32_t>(x);
}

Monomial add_exponents(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (int i = 0; i < kMaxVars; ++i) {
    out[i] = checked_exponent(static_cast<std::int64_t>(a[i]) + b[i]);
  }
  return out;
}

LatticePolytopeT LatticePolytopeT::interval(std::int64_t lo, std::int64_t hi) {
  LatticePolytopeT p;
  p.r = 1;
  p.lo = {lo};
  p.hi = {hi};
  return p;
}

bool LatticePolytopeT::contains(std::span<const std::int64_t> v) const {
  if (static_cast<int>(v.size()) != r) throw InvalidArgument("polytope dimension mismatch");
  for (int i = 0; i < r; ++i) {
    if (v[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] ||
        v[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)])
      return false;
  }
  if (r == 1) return true;
  return std::binary_search(points.begin(), points.end(), std::vector<std::int64_t>(v.begin(), v.end()));
}

LatticePolytopeT scaled_interval_sum(const std::vector<LatticePolytopeT>& parts,
                                     const std::vector<std::int64_t>& scales) {
  if (parts.size() != scales.size()) throw InvalidArgument("parts and scales differ in length");
  std::int64_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].r != 1) throw DimensionUnsupported("interval sums need r = 1");
    lo += scales[i] * parts[i].lo[0];
    hi += scales[i] * parts[i].hi[0];
  }
  return LatticePolytopeT::interval(lo, hi);
}

// ---------------------------------------------------------------------------

LaurentPoly::LaurentPoly(VarLayout layout, mpz_class modulus) : layout_(layout), modulus_(std::move(modulus)) {
  layout_.validate();
  if (modulus_ < 0) throw InvalidArgument("negative modulus");
}

LaurentPoly LaurentPoly::constant(VarLayout layout, const mpz_class& c, const mpz_class& modulus) {
  return monomial(layout, Monomial{}, c, modulus);
}

LaurentPoly LaurentPoly::monomial(VarLayout layout, const Monomial& m, const mpz_class& c,
                                  const mpz_class& modulus) {
  LaurentPoly f(layout, modulus);
  for (int i = layout.nvars(); i < kMaxVars; ++i) {
    if (m[i] != 0) throw InvalidArgument("monomial uses a variable outside the layout");
  }
  f.terms_.push_back({m, c});
  f.canonicalize();
  return f;
}

LaurentPoly LaurentPoly::t_var(VarLayout layout, int i) {
  if (i < 0 || i >= layout.r) throw InvalidArgument("t index out of range");
  Monomial m;
  m[i] = 1;
  return monomial(layout, m, 1);
}

LaurentPoly LaurentPoly::z_var(VarLayout layout, int i) {
  if (i < 0 || i >= layout.n) throw InvalidArgument("z index out of range");
  Monomial m;
  m[layout.r + i] = 1;
  return monomial(layout, m, 1);
}

LaurentPoly LaurentPoly::from_terms(VarLayout layout, std::vector<Term> terms, const mpz_class& modulus) {
  LaurentPoly f(layout, modulus);
  f.terms_ = std::move(terms);
  f.canonicalize();
  return f;
}

LaurentPoly LaurentPoly::from_sorted_terms(VarLayout layout, std::vector<Term> terms, const mpz_class& modulus) {
  LaurentPoly f(layout, modulus);
  f.terms_ = std::move(terms);
  return f;
}

void LaurentPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && modulus_ != 0) mpz_fdiv_r(out.back().coeff.get_mpz_t(), out.back().coeff.get_mpz_t(), modulus_.get_mpz_t());
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && modulus_ != 0) mpz_fdiv_r(out.back().coeff.get_mpz_t(), out.back().coeff.get_mpz_t(), modulus_.get_mpz_t());
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

mpz_class LaurentPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono < x; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

LaurentPoly LaurentPoly::reduced(const mpz_class& modulus) const {
  LaurentPoly f(layout_, modulus);
  f.terms_ = terms_;
  if (modulus != 0) {
    std::vector<Term> out;
    out.reserve(f.terms_.size());
    for (auto& t : f.terms_) {
      mpz_fdiv_r(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), modulus.get_mpz_t());
      if (t.coeff != 0) out.push_back(std::move(t));
    }
    f.terms_ = std::move(out);
  }
  return f;
}

void LaurentPoly::check_layout(const LaurentPoly& o) const {
  if (!(layout_ == o.layout_)) throw LayoutMismatch("polynomials have different variable layouts");
}

mpz_class LaurentPoly::join_modulus(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.modulus_ == 0) return b.modulus_;
  if (b.modulus_ == 0 || a.modulus_ == b.modulus_) return a.modulus_;
  throw InvalidArgument("polynomials reduced modulo different moduli");
}

namespace {

void reduce_coeff(mpz_class& c, const mpz_class& modulus) {
  if (modulus != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
}

// Merge a + sign*b for sorted term lists.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign,
                              const mpz_class& modulus) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      Term t = a[i++];
      reduce_coeff(t.coeff, modulus);
      if (t.coeff != 0) out.push_back(std::move(t));
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      Term t{b[j].mono, sign > 0 ? b[j].coeff : mpz_class(-b[j].coeff)};
      ++j;
      reduce_coeff(t.coeff, modulus);
      if (t.coeff != 0) out.push_back(std::move(t));
    } else {
      Term t{a[i].mono, sign > 0 ? mpz_class(a[i].coeff + b[j].coeff) : mpz_class(a[i].coeff - b[j].coeff)};
      ++i;
      ++j;
      reduce_coeff(t.coeff, modulus);
      if (t.coeff != 0) out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_layout(o);
  modulus_ = join_modulus(*this, o);
  terms_ = merge_terms(terms_, o.terms_, +1, modulus_);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_layout(o);
  modulus_ = join_modulus(*this, o);
  terms_ = merge_terms(terms_, o.terms_, -1, modulus_);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly f(layout_, modulus_);
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n{t.mono, -t.coeff};
    reduce_coeff(n.coeff, modulus_);
    f.terms_.push_back(std::move(n));
  }
  return f;
}

LaurentPoly LaurentPoly::scaled(const mpz_class& c) const {
  LaurentPoly f(layout_, modulus_);
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n{t.mono, t.coeff * c};
    reduce_coeff(n.coeff, modulus_);
    if (n.coeff != 0) f.terms_.push_back(std::move(n));
  }
  return f;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m) const {
  LaurentPoly f(layout_, modulus_);
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) f.terms_.push_back({add_exponents(t.mono, m), t.coeff});
  return f;
}

namespace {

constexpr std::size_t kDenseLimitModular = std::size_t{1} << 25;
constexpr std::size_t kDenseLimitExact = std::size_t{1} << 22;

struct Box {
  bool ok = false;
  int elim = -1;
  std::int64_t elim_degree = 0;
  std::vector<std::int64_t> min_a, min_b, range, stride;
  std::size_t size = 0;
};

Box plan_dense(const LaurentPoly& a, const LaurentPoly& b, std::size_t limit) {
  Box box;
  const int nv = a.layout().nvars();
  box.min_a.assign(static_cast<std::size_t>(nv), INT64_MAX);
  box.min_b.assign(static_cast<std::size_t>(nv), INT64_MAX);
  std::vector<std::int64_t> max_a(static_cast<std::size_t>(nv), INT64_MIN), max_b(static_cast<std::size_t>(nv), INT64_MIN);
  for (const auto& t : a.terms())
    for (int v = 0; v < nv; ++v) {
      box.min_a[static_cast<std::size_t>(v)] = std::min<std::int64_t>(box.min_a[static_cast<std::size_t>(v)], t.mono[v]);
      max_a[static_cast<std::size_t>(v)] = std::max<std::int64_t>(max_a[static_cast<std::size_t>(v)], t.mono[v]);
    }
  for (const auto& t : b.terms())
    for (int v = 0; v < nv; ++v) {
      box.min_b[static_cast<std::size_t>(v)] = std::min<std::int64_t>(box.min_b[static_cast<std::size_t>(v)], t.mono[v]);
      max_b[static_cast<std::size_t>(v)] = std::max<std::int64_t>(max_b[static_cast<std::size_t>(v)], t.mono[v]);
    }
  const auto da = a.homogeneous_degree();
  const auto db = b.homogeneous_degree();
  if (da && db) {
    box.elim = nv - 1;
    box.elim_degree = *da + *db;
  }
  box.range.assign(static_cast<std::size_t>(nv), 1);
  box.stride.assign(static_cast<std::size_t>(nv), 0);
  std::size_t running = 1;
  for (int v = nv - 1; v >= 0; --v) {
    if (v == box.elim) continue;
    const auto uv = static_cast<std::size_t>(v);
    const std::int64_t range = max_a[uv] + max_b[uv] - box.min_a[uv] - box.min_b[uv] + 1;
    box.range[uv] = range;
    box.stride[uv] = static_cast<std::int64_t>(running);
    if (static_cast<std::size_t>(range) > limit / running) return box;
    running *= static_cast<std::size_t>(range);
  }
  box.size = running;
  box.ok = true;
  return box;
}

std::int64_t dense_index(const Monomial& m, const std::vector<std::int64_t>& mins, const Box& box, int nv) {
  std::int64_t idx = 0;
  for (int v = 0; v < nv; ++v) {
    if (v == box.elim) continue;
    idx += (m[v] - mins[static_cast<std::size_t>(v)]) * box.stride[static_cast<std::size_t>(v)];
  }
  return idx;
}

Monomial dense_monomial(std::int64_t idx, const Box& box, int nv) {
  Monomial m;
  std::int64_t sum = 0;
  for (int v = 0; v < nv; ++v) {
    if (v == box.elim) continue;
    const auto uv = static_cast<std::size_t>(v);
    const std::int64_t digit = idx / box.stride[uv];
    idx %= box.stride[uv];
    m[v] = checked_exponent(digit + box.min_a[uv] + box.min_b[uv]);
    sum += m[v];
  }
  if (box.elim >= 0) m[box.elim] = checked_exponent(box.elim_degree - sum);
  return m;
}

bool small_modulus(const mpz_class& m) { return m != 0 && mpz_sizeinbase(m.get_mpz_t(), 2) <= 62; }

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_layout(b);
  const mpz_class modulus = LaurentPoly::join_modulus(a, b);
  LaurentPoly out(a.layout(), modulus);
  if (a.is_zero() || b.is_zero()) return out;
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& big = a.size() <= b.size() ? b : a;
  const int nv = a.layout().nvars();

  if (small.size() <= 8) {
    std::vector<Term> acc;
    for (const auto& st : small.terms()) {
      std::vector<Term> row;
      row.reserve(big.size());
      for (const auto& bt : big.terms()) row.push_back({add_exponents(st.mono, bt.mono), st.coeff * bt.coeff});
      acc = merge_terms(acc, row, +1, modulus);
    }
    out.terms_ = std::move(acc);
    return out;
  }

  const std::size_t work = a.size() * b.size();
  const bool modular = small_modulus(modulus);
  const std::size_t limit = modular ? kDenseLimitModular : kDenseLimitExact;
  Box box = plan_dense(a, b, limit);
  if (box.ok && box.size <= 8 * work + 4096) {
    std::vector<std::int64_t> ia, ib;
    ia.reserve(a.size());
    ib.reserve(b.size());
    for (const auto& t : a.terms()) ia.push_back(dense_index(t.mono, box.min_a, box, nv));
    for (const auto& t : b.terms()) ib.push_back(dense_index(t.mono, box.min_b, box, nv));
    std::vector<Term> terms;
    if (modular) {
      const std::uint64_t m = modulus.get_ui();
      std::vector<std::uint64_t> ra, rb;
      for (const auto& t : a.terms()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), modulus.get_mpz_t());
        ra.push_back(r.get_ui());
      }
      for (const auto& t : b.terms()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), modulus.get_mpz_t());
        rb.push_back(r.get_ui());
      }
      std::vector<std::uint64_t> acc(box.size, 0);
      for (std::size_t i = 0; i < ra.size(); ++i) {
        if (ra[i] == 0) continue;
        const std::uint64_t x = ra[i];
        const std::int64_t base = ia[i];
        for (std::size_t j = 0; j < rb.size(); ++j) {
          std::uint64_t& slot = acc[static_cast<std::size_t>(base + ib[j])];
          slot = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * rb[j] + slot) % m);
        }
      }
      for (std::size_t idx = 0; idx < acc.size(); ++idx) {
        if (acc[idx] != 0) terms.push_back({dense_monomial(static_cast<std::int64_t>(idx), box, nv), mpz_class(static_cast<unsigned long>(acc[idx]))});
      }
    } else {
      std::vector<mpz_class> acc(box.size);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t base = ia[i];
        mpz_srcptr x = a.terms()[i].coeff.get_mpz_t();
        for (std::size_t j = 0; j < b.size(); ++j) {
          mpz_addmul(acc[static_cast<std::size_t>(base + ib[j])].get_mpz_t(), x, b.terms()[j].coeff.get_mpz_t());
        }
      }
      for (std::size_t idx = 0; idx < acc.size(); ++idx) {
        if (modulus != 0) reduce_coeff(acc[idx], modulus);
        if (acc[idx] != 0) terms.push_back({dense_monomial(static_cast<std::int64_t>(idx), box, nv), std::move(acc[idx])});
      }
    }
    out.terms_ = std::move(terms);
    return out;
  }

  std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(work, std::size_t{1} << 24));
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      mpz_class& slot = acc[add_exponents(x.mono, y.mono)];
      mpz_addmul(slot.get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) terms.push_back({m, std::move(c)});
  out.terms_ = std::move(terms);
  out.canonicalize();
  return out;
}

LaurentPoly LaurentPoly::power(std::uint64_t k) const {
  if (k == 0) return constant(layout_, 1, modulus_);
  if (terms_.size() == 1) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m[i] = checked_exponent(static_cast<std::int64_t>(terms_[0].mono[i]) * static_cast<std::int64_t>(k));
    mpz_class c;
    if (modulus_ != 0) {
      mpz_class e(static_cast<unsigned long>(k));
      mpz_powm(c.get_mpz_t(), terms_[0].coeff.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
    } else {
      mpz_pow_ui(c.get_mpz_t(), terms_[0].coeff.get_mpz_t(), static_cast<unsigned long>(k));
    }
    return monomial(layout_, m, c, modulus_);
  }
  LaurentPoly result = constant(layout_, 1, modulus_);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::coeff_t(std::span<const std::int64_t> v) const {
  if (static_cast<int>(v.size()) != layout_.r) throw InvalidArgument("coeff_t index has wrong dimension");
  LaurentPoly out(layout_, modulus_);
  Monomial lo, hi;
  for (int i = 0; i < layout_.r; ++i) {
    const std::int64_t x = v[static_cast<std::size_t>(i)];
    if (x > INT32_MAX || x < INT32_MIN) return out;
    lo[i] = hi[i] = static_cast<std::int32_t>(x);
  }
  for (int i = layout_.r; i < kMaxVars; ++i) {
    lo[i] = INT32_MIN;
    hi[i] = INT32_MAX;
  }
  auto first = std::lower_bound(terms_.begin(), terms_.end(), lo, [](const Term& t, const Monomial& x) { return t.mono < x; });
  auto last = std::upper_bound(terms_.begin(), terms_.end(), hi, [](const Monomial& x, const Term& t) { return x < t.mono; });
  for (auto it = first; it != last; ++it) {
    Term t = *it;
    for (int i = 0; i < layout_.r; ++i) t.mono[i] = 0;
    out.terms_.push_back(std::move(t));
  }
  return out;
}

LaurentPoly LaurentPoly::sigma_subst(std::uint64_t p, int k, SigmaScope scope) const {
  if (k < 0) throw InvalidArgument("sigma power must be nonnegative");
  std::int64_t factor = 1;
  for (int i = 0; i < k; ++i) {
    if (factor > INT32_MAX) throw ExponentOverflow("p^k too large for sigma substitution");
    factor *= static_cast<std::int64_t>(p);
  }
  LaurentPoly out(layout_, modulus_);
  out.terms_.reserve(terms_.size());
  const int first = scope == SigmaScope::All ? 0 : layout_.r;
  for (const auto& t : terms_) {
    Term n = t;
    for (int i = first; i < layout_.nvars(); ++i) n.mono[i] = checked_exponent(static_cast<std::int64_t>(t.mono[i]) * factor);
    out.terms_.push_back(std::move(n));
  }
  return out;
}

namespace {

LaurentPoly differentiate(const LaurentPoly& f, int var) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (t.mono[var] == 0) continue;
    Term n{t.mono, t.coeff * t.mono[var]};
    n.mono[var] -= 1;
    terms.push_back(std::move(n));
  }
  return LaurentPoly::from_terms(f.layout(), std::move(terms), f.modulus());
}

}  // namespace

LaurentPoly LaurentPoly::derivative_z(int v) const {
  if (v < 0 || v >= layout_.n) throw InvalidArgument("z index out of range");
  return differentiate(*this, layout_.r + v);
}

LaurentPoly LaurentPoly::derivative_t(int i) const {
  if (i < 0 || i >= layout_.r) throw InvalidArgument("t index out of range");
  return differentiate(*this, i);
}

LatticePolytopeT LaurentPoly::newton_polytope_t() const {
  if (is_zero()) throw ZeroPolynomial("Newton polytope of the zero polynomial");
  LatticePolytopeT p;
  p.r = layout_.r;
  p.lo.assign(static_cast<std::size_t>(p.r), INT64_MAX);
  p.hi.assign(static_cast<std::size_t>(p.r), INT64_MIN);
  for (const auto& t : terms_) {
    std::vector<std::int64_t> v;
    for (int i = 0; i < p.r; ++i) {
      p.lo[static_cast<std::size_t>(i)] = std::min<std::int64_t>(p.lo[static_cast<std::size_t>(i)], t.mono[i]);
      p.hi[static_cast<std::size_t>(i)] = std::max<std::int64_t>(p.hi[static_cast<std::size_t>(i)], t.mono[i]);
      v.push_back(t.mono[i]);
    }
    if (p.r > 1) p.points.push_back(std::move(v));
  }
  std::sort(p.points.begin(), p.points.end());
  p.points.erase(std::unique(p.points.begin(), p.points.end()), p.points.end());
  return p;
}

const Term& LaurentPoly::leading_term() const {
  if (is_zero()) throw ZeroPolynomial("leading term of the zero polynomial");
  return terms_.back();
}

std::optional<std::int64_t> LaurentPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  auto deg = [&](const Term& t) {
    std::int64_t d = 0;
    for (int i = 0; i < layout_.nvars(); ++i) d += t.mono[i];
    return d;
  };
  const std::int64_t d0 = deg(terms_[0]);
  for (const auto& t : terms_)
    if (deg(t) != d0) return std::nullopt;
  return d0;
}

std::optional<std::int64_t> LaurentPoly::z_degree_if_homogeneous() const {
  if (terms_.empty()) return std::nullopt;
  auto deg = [&](const Term& t) {
    std::int64_t d = 0;
    for (int i = layout_.r; i < layout_.nvars(); ++i) d += t.mono[i];
    return d;
  };
  const std::int64_t d0 = deg(terms_[0]);
  for (const auto& t : terms_)
    if (deg(t) != d0) return std::nullopt;
  return d0;
}

UnramifiedElement LaurentPoly::evaluate(std::span<const UnramifiedElement> z_point,
                                        std::span<const UnramifiedElement> t_point) const {
  if (static_cast<int>(z_point.size()) != layout_.n) throw InvalidArgument("evaluation point has wrong dimension");
  if (!t_point.empty() && static_cast<int>(t_point.size()) != layout_.r) {
    throw InvalidArgument("t point has wrong dimension");
  }
  const UnramifiedRing& ring = z_point[0].ring();
  const int nv = layout_.nvars();
  std::vector<const UnramifiedElement*> vars(static_cast<std::size_t>(nv), nullptr);
  for (int i = 0; i < layout_.r; ++i)
    vars[static_cast<std::size_t>(i)] = t_point.empty() ? nullptr : &t_point[static_cast<std::size_t>(i)];
  for (int i = 0; i < layout_.n; ++i) vars[static_cast<std::size_t>(layout_.r + i)] = &z_point[static_cast<std::size_t>(i)];
  std::vector<std::unordered_map<std::int32_t, UnramifiedElement>> cache(static_cast<std::size_t>(nv));
  std::vector<std::optional<UnramifiedElement>> inverses(static_cast<std::size_t>(nv));
  auto power_of = [&](int v, std::int32_t e) -> const UnramifiedElement& {
    auto& c = cache[static_cast<std::size_t>(v)];
    auto it = c.find(e);
    if (it != c.end()) return it->second;
    const UnramifiedElement* x = vars[static_cast<std::size_t>(v)];
    if (x == nullptr) throw InvalidArgument("t exponent present but no t point given");
    UnramifiedElement val = ring.one();
    if (e >= 0) {
      val = x->pow(static_cast<std::uint64_t>(e));
    } else {
      if (!x->is_unit()) throw NonUnitAtNegativeExponent("negative exponent at a non-unit coordinate");
      auto& inv = inverses[static_cast<std::size_t>(v)];
      if (!inv) inv = x->inverse();
      val = inv->pow(static_cast<std::uint64_t>(-static_cast<std::int64_t>(e)));
    }
    return c.emplace(e, val).first->second;
  };
  UnramifiedElement acc = ring.zero();
  for (const auto& t : terms_) {
    UnramifiedElement term = ring.from_mpz(t.coeff);
    for (int v = 0; v < nv; ++v) {
      if (t.mono[v] != 0) term *= power_of(v, t.mono[v]);
    }
    acc += term;
  }
  return acc;
}

ValuationScan LaurentPoly::scan_valuation(std::uint64_t p, int cap, int claimed) const {
  ValuationScan scan;
  scan.min = {cap, true};
  for (const auto& t : terms_) {
    const PadicValuation v = valuation(t.coeff, p, cap);
    ++scan.coefficients;
    if (v.value < scan.min.value) scan.min = v;
    if (!scan.witness && v.value < claimed) {
      scan.witness = t.mono;
      scan.witness_valuation = v;
    }
  }
  return scan;
}

std::string monomial_to_string(const Monomial& m, VarLayout layout) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < layout.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << " * ";
    first = false;
    if (i < layout.r) {
      os << "t" << (i + 1);
    } else {
      os << "z" << (i - layout.r + 1);
    }
    os << "^" << m[i];
  }
  if (first) return "1";
  return os.str();
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->coeff.get_str();
    const std::string mono = monomial_to_string(it->mono, layout_);
    if (mono != "1") os << " * " << mono;
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text, VarLayout layout) {
  layout.validate();
  std::vector<Term> terms;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\n");
    const auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const std::string body = trim(text);
  if (body.empty()) throw InvalidArgument("empty polynomial text");
  if (body == "0") return LaurentPoly(layout);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t next = body.find(" + ", pos);
    const std::string chunk = trim(body.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    Term term{Monomial{}, 1};
    std::size_t cpos = 0;
    bool have_coeff = false;
    while (cpos <= chunk.size()) {
      std::size_t star = chunk.find('*', cpos);
      const std::string factor = trim(chunk.substr(cpos, star == std::string::npos ? std::string::npos : star - cpos));
      if (factor.empty()) throw InvalidArgument("malformed term: " + chunk);
      if (factor[0] == 't' || factor[0] == 'z') {
        const auto caret = factor.find('^');
        const int idx = std::stoi(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        const std::int64_t e = caret == std::string::npos ? 1 : std::stoll(factor.substr(caret + 1));
        const int var = factor[0] == 't' ? idx - 1 : layout.r + idx - 1;
        if (idx < 1 || (factor[0] == 't' && idx > layout.r) || (factor[0] == 'z' && idx > layout.n)) {
          throw InvalidArgument("variable out of layout: " + factor);
        }
        term.mono[var] = checked_exponent(term.mono[var] + e);
      } else {
        if (have_coeff) throw InvalidArgument("two coefficients in term: " + chunk);
        term.coeff = mpz_class(factor);
        have_coeff = true;
      }
      if (star == std::string::npos) break;
      cpos = star + 1;
    }
    terms.push_back(std::move(term));
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return from_terms(layout, std::move(terms));
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.layout_ == b.layout_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

}  // namespace dkz
