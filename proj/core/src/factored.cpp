#include "dkz/factored.hpp"

#include <algorithm>
#include <map>

namespace dkz {

bool same_factor(const FactoredPoly::FactorPtr& a, const FactoredPoly::FactorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

LaurentPoly embed_factor(const LaurentPoly& factor, VarLayout layout, int i) {
  std::vector<Term> terms;
  terms.reserve(factor.size());
  for (const auto& t : factor.terms()) {
    Monomial m;
    m[0] = t.mono[0];
    m[layout.r + i] = t.mono[1];
    terms.push_back({m, t.coeff});
  }
  return LaurentPoly::from_terms(layout, std::move(terms));
}

namespace {

bool is_constant(const LaurentPoly& f) { return f.size() == 1 && f.terms()[0].mono == Monomial{}; }

bool same_core(const std::optional<LaurentPoly>& a, const std::optional<LaurentPoly>& b) {
  if (!a && !b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool same_shape(const FactoredPoly::Term& a, const FactoredPoly::Term& b) {
  if (!same_core(a.core, b.core)) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (!same_factor(a.factors[i], b.factors[i])) return false;
  return true;
}

// Memo for unary factor maps, keyed by input pointer.
class UnaryCache {
 public:
  template <class F>
  FactoredPoly::FactorPtr get(const FactoredPoly::FactorPtr& in, F&& f) {
    if (!in) return nullptr;
    auto it = memo_.find(in.get());
    if (it != memo_.end()) return it->second;
    auto out = std::make_shared<const LaurentPoly>(f(*in));
    memo_.emplace(in.get(), out);
    return out;
  }

 private:
  std::map<const LaurentPoly*, FactoredPoly::FactorPtr> memo_;
};

}  // namespace

FactoredPoly::FactoredPoly(VarLayout layout) : layout_(layout) { layout_.validate(); }

FactoredPoly FactoredPoly::from_laurent(const LaurentPoly& f) {
  if (f.modulus() != 0) throw InvalidArgument("factored polynomials hold exact coefficients");
  FactoredPoly out(f.layout());
  if (f.is_zero()) return out;
  Term t{1, f, std::vector<FactorPtr>(static_cast<std::size_t>(f.layout().n))};
  out.terms_.push_back(std::move(t));
  out.normalize();
  return out;
}

FactoredPoly FactoredPoly::product(VarLayout layout, const std::vector<LaurentPoly>& factors, const mpz_class& coeff) {
  if (layout.r != 1) throw DimensionUnsupported("per-variable factors need r = 1");
  if (static_cast<int>(factors.size()) != layout.n) throw InvalidArgument("need one factor per z variable");
  FactoredPoly out(layout);
  Term t{coeff, std::nullopt, {}};
  for (const auto& f : factors) {
    if (!(f.layout() == kFactorLayout)) throw LayoutMismatch("factor must have layout (1,1)");
    t.factors.push_back(std::make_shared<const LaurentPoly>(f));
  }
  out.terms_.push_back(std::move(t));
  out.normalize();
  return out;
}

FactoredPoly FactoredPoly::symmetric_product(VarLayout layout, const LaurentPoly& factor, const mpz_class& coeff) {
  if (layout.r != 1) throw DimensionUnsupported("per-variable factors need r = 1");
  if (!(factor.layout() == kFactorLayout)) throw LayoutMismatch("factor must have layout (1,1)");
  FactoredPoly out(layout);
  auto shared = std::make_shared<const LaurentPoly>(factor);
  Term t{coeff, std::nullopt, std::vector<FactorPtr>(static_cast<std::size_t>(layout.n), shared)};
  out.terms_.push_back(std::move(t));
  out.normalize();
  return out;
}

FactoredPoly FactoredPoly::constant(VarLayout layout, const mpz_class& c) {
  FactoredPoly out(layout);
  out.terms_.push_back({c, std::nullopt, std::vector<FactorPtr>(static_cast<std::size_t>(layout.n))});
  out.normalize();
  return out;
}

bool FactoredPoly::has_core() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.core.has_value(); });
}

bool FactoredPoly::is_symmetric() const {
  for (const auto& t : terms_) {
    if (t.core) return false;
    for (std::size_t i = 1; i < t.factors.size(); ++i)
      if (!same_factor(t.factors[0], t.factors[i])) return false;
  }
  return true;
}

void FactoredPoly::normalize() {
  std::vector<Term> cleaned;
  for (auto& t : terms_) {
    if (t.coeff == 0) continue;
    bool zero = false;
    if (t.core) {
      if (t.core->is_zero()) zero = true;
      else if (is_constant(*t.core)) {
        t.coeff *= t.core->terms()[0].coeff;
        t.core.reset();
      }
    }
    for (auto& f : t.factors) {
      if (!f) continue;
      if (f->is_zero()) {
        zero = true;
      } else if (is_constant(*f)) {
        t.coeff *= f->terms()[0].coeff;
        f.reset();
      }
    }
    if (zero || t.coeff == 0) continue;
    bool merged = false;
    for (auto& c : cleaned) {
      if (same_shape(c, t)) {
        c.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) cleaned.push_back(std::move(t));
  }
  cleaned.erase(std::remove_if(cleaned.begin(), cleaned.end(), [](const Term& t) { return t.coeff == 0; }),
                cleaned.end());
  terms_ = std::move(cleaned);
}

void FactoredPoly::check_layout(const FactoredPoly& o) const {
  if (!(layout_ == o.layout_)) throw LayoutMismatch("factored polynomials have different layouts");
}

FactoredPoly& FactoredPoly::operator+=(const FactoredPoly& o) {
  check_layout(o);
  for (const auto& t : o.terms_) terms_.push_back(t);
  normalize();
  return *this;
}

FactoredPoly& FactoredPoly::operator-=(const FactoredPoly& o) {
  check_layout(o);
  for (const auto& t : o.terms_) {
    Term n = t;
    n.coeff = -n.coeff;
    terms_.push_back(std::move(n));
  }
  normalize();
  return *this;
}

FactoredPoly FactoredPoly::operator-() const {
  FactoredPoly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

FactoredPoly FactoredPoly::scaled(const mpz_class& c) const {
  FactoredPoly out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  out.normalize();
  return out;
}

FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b) {
  a.check_layout(b);
  FactoredPoly out(a.layout_);
  std::map<std::pair<const LaurentPoly*, const LaurentPoly*>, FactoredPoly::FactorPtr> memo;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      FactoredPoly::Term t;
      t.coeff = x.coeff * y.coeff;
      if (x.core && y.core) t.core = *x.core * *y.core;
      else if (x.core) t.core = x.core;
      else if (y.core) t.core = y.core;
      t.factors.resize(x.factors.size());
      for (std::size_t i = 0; i < x.factors.size(); ++i) {
        const auto& fx = x.factors[i];
        const auto& fy = y.factors[i];
        if (!fx) t.factors[i] = fy;
        else if (!fy) t.factors[i] = fx;
        else {
          auto key = std::make_pair(fx.get(), fy.get());
          auto it = memo.find(key);
          if (it == memo.end()) it = memo.emplace(key, std::make_shared<const LaurentPoly>(*fx * *fy)).first;
          t.factors[i] = it->second;
        }
      }
      out.terms_.push_back(std::move(t));
    }
  out.normalize();
  return out;
}

FactoredPoly FactoredPoly::power(std::uint64_t k) const {
  if (k == 0) return constant(layout_, 1);
  if (terms_.size() == 1) {
    const Term& t = terms_[0];
    Term n;
    mpz_pow_ui(n.coeff.get_mpz_t(), t.coeff.get_mpz_t(), static_cast<unsigned long>(k));
    if (t.core) n.core = t.core->power(k);
    UnaryCache cache;
    for (const auto& f : t.factors) n.factors.push_back(cache.get(f, [k](const LaurentPoly& x) { return x.power(k); }));
    FactoredPoly out(layout_);
    out.terms_.push_back(std::move(n));
    out.normalize();
    return out;
  }
  FactoredPoly result = constant(layout_, 1);
  FactoredPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

FactoredPoly FactoredPoly::sigma_subst(std::uint64_t p, int k, SigmaScope scope) const {
  FactoredPoly out = *this;
  UnaryCache cache;
  for (auto& t : out.terms_) {
    if (t.core) t.core = t.core->sigma_subst(p, k, scope);
    for (auto& f : t.factors) f = cache.get(f, [&](const LaurentPoly& x) { return x.sigma_subst(p, k, scope); });
  }
  return out;
}

FactoredPoly FactoredPoly::derivative_z(int v) const {
  if (v < 0 || v >= layout_.n) throw InvalidArgument("z index out of range");
  FactoredPoly out(layout_);
  UnaryCache cache;
  for (const auto& t : terms_) {
    if (t.core) {
      Term d = t;
      d.core = t.core->derivative_z(v);
      out.terms_.push_back(std::move(d));
    }
    const auto& f = t.factors[static_cast<std::size_t>(v)];
    if (f) {
      Term d = t;
      d.factors[static_cast<std::size_t>(v)] = cache.get(f, [](const LaurentPoly& x) { return x.derivative_z(0); });
      out.terms_.push_back(std::move(d));
    }
  }
  out.normalize();
  return out;
}

FactoredPoly FactoredPoly::derivative_t() const {
  if (layout_.r != 1) throw DimensionUnsupported("derivative_t on factored polynomials needs r = 1");
  FactoredPoly out(layout_);
  UnaryCache cache;
  for (const auto& t : terms_) {
    if (t.core) {
      Term d = t;
      d.core = t.core->derivative_t(0);
      out.terms_.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (!t.factors[i]) continue;
      Term d = t;
      d.factors[i] = cache.get(t.factors[i], [](const LaurentPoly& x) { return x.derivative_t(0); });
      out.terms_.push_back(std::move(d));
    }
  }
  out.normalize();
  return out;
}

namespace {

struct Entry {
  std::int32_t b;
  std::int32_t t;
  mpz_class c;
};

std::vector<Entry> factor_entries(const FactoredPoly::FactorPtr& f) {
  std::vector<Entry> out;
  if (!f) {
    out.push_back({0, 0, 1});
    return out;
  }
  for (const auto& term : f->terms()) out.push_back({term.mono[1], term.mono[0], term.coeff});
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.b != y.b ? x.b < y.b : x.t < y.t; });
  return out;
}

// Coefficient of t^target in coeff * prod_i f_i(t, z_i), appended to `out`.
void factor_coeff_dfs(const std::vector<std::vector<Entry>>& lists, std::int64_t target, const mpz_class& coeff,
                      const Monomial& shift, const VarLayout& layout, std::vector<dkz::Term>& out) {
  const std::size_t n = lists.size();
  std::vector<std::int64_t> min_suffix(n + 1, 0), max_suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (const auto& e : lists[i]) {
      lo = std::min<std::int64_t>(lo, e.t);
      hi = std::max<std::int64_t>(hi, e.t);
    }
    if (lists[i].empty()) return;
    min_suffix[i] = min_suffix[i + 1] + lo;
    max_suffix[i] = max_suffix[i + 1] + hi;
  }
  std::vector<mpz_class> partial(n + 1);
  partial[0] = coeff;
  Monomial mono = shift;
  std::vector<std::int32_t> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = shift[layout.r + static_cast<int>(i)];
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t remaining) {
    if (pos == n) {
      if (remaining == 0) out.push_back({mono, partial[n]});
      return;
    }
    for (const auto& e : lists[pos]) {
      const std::int64_t rest = remaining - e.t;
      if (rest < min_suffix[pos + 1] || rest > max_suffix[pos + 1]) continue;
      mono[layout.r + static_cast<int>(pos)] = checked_exponent(static_cast<std::int64_t>(base[pos]) + e.b);
      mpz_mul(partial[pos + 1].get_mpz_t(), partial[pos].get_mpz_t(), e.c.get_mpz_t());
      rec(pos + 1, rest);
    }
  };
  if (target < min_suffix[0] || target > max_suffix[0]) return;
  rec(0, target);
}

}  // namespace

LaurentPoly FactoredPoly::coeff_t(std::int64_t v) const {
  if (layout_.r != 1) throw DimensionUnsupported("factored coeff_t needs r = 1");
  std::vector<dkz::Term> out;
  std::map<const LaurentPoly*, std::vector<Entry>> entry_cache;
  for (const auto& t : terms_) {
    std::vector<std::vector<Entry>> lists;
    for (const auto& f : t.factors) {
      if (!f) {
        lists.push_back(factor_entries(f));
        continue;
      }
      auto it = entry_cache.find(f.get());
      if (it == entry_cache.end()) it = entry_cache.emplace(f.get(), factor_entries(f)).first;
      lists.push_back(it->second);
    }
    if (!t.core) {
      factor_coeff_dfs(lists, v, t.coeff, Monomial{}, layout_, out);
    } else {
      for (const auto& ct : t.core->terms()) {
        Monomial shift = ct.mono;
        const std::int64_t a = shift[0];
        shift[0] = 0;
        factor_coeff_dfs(lists, v - a, t.coeff * ct.coeff, shift, layout_, out);
      }
    }
  }
  return LaurentPoly::from_terms(layout_, std::move(out));
}

std::pair<std::int64_t, std::int64_t> FactoredPoly::t_bounds() const {
  if (layout_.r != 1) throw DimensionUnsupported("t_bounds needs r = 1");
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  for (const auto& t : terms_) {
    std::int64_t tl = 0, th = 0;
    if (t.core) {
      const auto np = t.core->newton_polytope_t();
      tl += np.lo[0];
      th += np.hi[0];
    }
    for (const auto& f : t.factors) {
      if (!f) continue;
      const auto np = f->newton_polytope_t();
      tl += np.lo[0];
      th += np.hi[0];
    }
    lo = std::min(lo, tl);
    hi = std::max(hi, th);
  }
  if (terms_.empty()) return {0, -1};
  return {lo, hi};
}

LaurentPoly FactoredPoly::expand(std::size_t max_terms) const {
  LaurentPoly acc(layout_);
  for (const auto& t : terms_) {
    double estimate = t.core ? static_cast<double>(t.core->size()) : 1.0;
    for (const auto& f : t.factors)
      if (f) estimate *= static_cast<double>(f->size());
    if (estimate > static_cast<double>(max_terms)) {
      throw InvalidArgument("factored polynomial too large to expand");
    }
    LaurentPoly prod = t.core ? *t.core : LaurentPoly::constant(layout_, 1);
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (t.factors[i]) prod = prod * embed_factor(*t.factors[i], layout_, static_cast<int>(i));
    }
    acc += prod.scaled(t.coeff);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Coefficient scan without expansion.

namespace {

struct ResidueOps {
  const ModulusContext* ctx;
  using V = Residue;
  V from_mpz(const mpz_class& c) const { return ctx->reduce(c); }
  V mul(V a, V b) const { return ctx->mul(a, b); }
  V add(V a, V b) const { return ctx->add(a, b); }
};

struct ExactOps {
  using V = mpz_class;
  V from_mpz(const mpz_class& c) const { return c; }
  V mul(const V& a, const V& b) const { return a * b; }
  V add(const V& a, const V& b) const { return a + b; }
};

template <class Ops>
class Scanner {
 public:
  using V = typename Ops::V;
  using Visit = std::function<bool(const std::vector<std::int32_t>& b, std::int64_t t, const V& value)>;

  Scanner(const FactoredPoly& f, Ops ops) : f_(f), ops_(ops) {
    n_ = static_cast<std::size_t>(f.layout().n);
    for (const auto& t : f.terms()) {
      std::vector<int> ids;
      for (const auto& fac : t.factors) ids.push_back(table_id(fac));
      term_tables_.push_back(std::move(ids));
      coeffs_.push_back(ops_.from_mpz(t.coeff));
    }
    symmetric_ = f.is_symmetric();
    candidates_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<std::int32_t> c;
      for (const auto& ids : term_tables_) {
        const Table& tab = tables_[static_cast<std::size_t>(ids[i])];
        for (std::size_t k = 0; k < tab.by_b.size(); ++k)
          if (!tab.by_b[k].empty()) c.push_back(tab.bmin + static_cast<std::int32_t>(k));
      }
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      candidates_[i] = std::move(c);
    }
    states_.assign(n_ + 1, std::vector<std::vector<std::pair<std::int64_t, V>>>(term_tables_.size()));
    b_.assign(n_, 0);
  }

  void run(const Visit& visit) {
    for (std::size_t k = 0; k < term_tables_.size(); ++k) {
      states_[0][k].clear();
      states_[0][k].push_back({0, coeffs_[k]});
    }
    stop_ = false;
    rec(0, 0, visit);
  }

 private:
  struct Table {
    std::int32_t bmin = 0;
    std::vector<std::vector<std::pair<std::int64_t, V>>> by_b;
  };

  int table_id(const FactoredPoly::FactorPtr& f) {
    const LaurentPoly* key = f.get();
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    Table tab;
    if (!f) {
      tab.bmin = 0;
      tab.by_b.resize(1);
      tab.by_b[0].push_back({0, ops_.from_mpz(1)});
    } else {
      std::int32_t lo = INT32_MAX, hi = INT32_MIN;
      for (const auto& t : f->terms()) {
        lo = std::min(lo, t.mono[1]);
        hi = std::max(hi, t.mono[1]);
      }
      tab.bmin = lo;
      tab.by_b.resize(static_cast<std::size_t>(hi - lo + 1));
      for (const auto& t : f->terms()) {
        tab.by_b[static_cast<std::size_t>(t.mono[1] - lo)].push_back({t.mono[0], ops_.from_mpz(t.coeff)});
      }
    }
    tables_.push_back(std::move(tab));
    const int id = static_cast<int>(tables_.size() - 1);
    ids_.emplace(key, id);
    return id;
  }

  const std::vector<std::pair<std::int64_t, V>>* lookup(int table, std::int32_t b) const {
    const Table& tab = tables_[static_cast<std::size_t>(table)];
    const std::int64_t k = static_cast<std::int64_t>(b) - tab.bmin;
    if (k < 0 || k >= static_cast<std::int64_t>(tab.by_b.size())) return nullptr;
    const auto& v = tab.by_b[static_cast<std::size_t>(k)];
    return v.empty() ? nullptr : &v;
  }

  void rec(std::size_t pos, std::size_t start, const Visit& visit) {
    if (stop_) return;
    if (pos == n_) {
      emit(visit);
      return;
    }
    const auto& cand = candidates_[pos];
    for (std::size_t ci = symmetric_ ? start : 0; ci < cand.size(); ++ci) {
      const std::int32_t b = cand[ci];
      b_[pos] = b;
      bool any = false;
      for (std::size_t k = 0; k < term_tables_.size(); ++k) {
        auto& next = states_[pos + 1][k];
        next.clear();
        const auto& cur = states_[pos][k];
        if (cur.empty()) continue;
        const auto* entries = lookup(term_tables_[k][pos], b);
        if (entries == nullptr) continue;
        for (const auto& [t1, v1] : cur)
          for (const auto& [t2, v2] : *entries) next.push_back({t1 + t2, ops_.mul(v1, v2)});
        if (next.size() > 1) compact(next);
        any = true;
      }
      if (any) rec(pos + 1, ci, visit);
      if (stop_) return;
    }
  }

  void compact(std::vector<std::pair<std::int64_t, V>>& v) const {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (w > 0 && v[w - 1].first == v[i].first) {
        v[w - 1].second = ops_.add(v[w - 1].second, v[i].second);
      } else {
        if (w != i) v[w] = v[i];
        ++w;
      }
    }
    v.resize(w);
  }

  void emit(const Visit& visit) {
    leaf_.clear();
    for (std::size_t k = 0; k < term_tables_.size(); ++k)
      for (const auto& pr : states_[n_][k]) leaf_.push_back(pr);
    if (leaf_.size() > 1) compact(leaf_);
    for (const auto& [t, v] : leaf_) {
      if (!visit(b_, t, v)) {
        stop_ = true;
        return;
      }
    }
  }

  const FactoredPoly& f_;
  Ops ops_;
  std::size_t n_ = 0;
  bool symmetric_ = false;
  bool stop_ = false;
  std::map<const LaurentPoly*, int> ids_;
  std::vector<Table> tables_;
  std::vector<std::vector<int>> term_tables_;
  std::vector<V> coeffs_;
  std::vector<std::vector<std::int32_t>> candidates_;
  std::vector<std::vector<std::vector<std::pair<std::int64_t, V>>>> states_;
  std::vector<std::pair<std::int64_t, V>> leaf_;
  std::vector<std::int32_t> b_;
};

Monomial leaf_monomial(const std::vector<std::int32_t>& b, std::int64_t t) {
  Monomial m;
  m[0] = checked_exponent(t);
  for (std::size_t i = 0; i < b.size(); ++i) m[1 + static_cast<int>(i)] = b[i];
  return m;
}

}  // namespace

ValuationScan FactoredPoly::scan_valuation(const ModulusContext& ctx, int claimed) const {
  if (has_core() || layout_.r != 1) {
    LaurentPoly e = expand();
    return e.scan_valuation(ctx.prime(), ctx.precision(), claimed);
  }
  ValuationScan scan;
  scan.min = {ctx.precision(), true};
  Scanner<ResidueOps> scanner(*this, ResidueOps{&ctx});
  scanner.run([&](const std::vector<std::int32_t>& b, std::int64_t t, const Residue& v) {
    ++scan.coefficients;
    const PadicValuation val = valuation(v, ctx);
    if (val.value < scan.min.value) scan.min = val;
    if (!scan.witness && val.value < claimed) {
      scan.witness = leaf_monomial(b, t);
      scan.witness_valuation = val;
    }
    return true;
  });
  return scan;
}

std::optional<Monomial> FactoredPoly::nonzero_outside_t(std::int64_t lo, std::int64_t hi) const {
  if (layout_.r != 1) throw DimensionUnsupported("nonzero_outside_t needs r = 1");
  const auto [blo, bhi] = t_bounds();
  if (terms_.empty() || (blo >= lo && bhi <= hi)) return std::nullopt;
  if (has_core()) {
    LaurentPoly e = expand();
    for (const auto& t : e.terms())
      if (t.mono[0] < lo || t.mono[0] > hi) return t.mono;
    return std::nullopt;
  }
  std::optional<Monomial> found;
  Scanner<ExactOps> scanner(*this, ExactOps{});
  scanner.run([&](const std::vector<std::int32_t>& b, std::int64_t t, const mpz_class& v) {
    if ((t < lo || t > hi) && v != 0) {
      found = leaf_monomial(b, t);
      return false;
    }
    return true;
  });
  return found;
}

bool FactoredPoly::is_exact_zero() const {
  if (terms_.empty()) return true;
  if (has_core() || layout_.r != 1) return expand().is_zero();
  bool zero = true;
  Scanner<ExactOps> scanner(*this, ExactOps{});
  scanner.run([&](const std::vector<std::int32_t>&, std::int64_t, const mpz_class& v) {
    if (v != 0) {
      zero = false;
      return false;
    }
    return true;
  });
  return zero;
}

}  // namespace dkz
