#include "dkz/upoly.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace dkz {

namespace {

using u128 = unsigned __int128;

UnramifiedElement element_at(const UnramifiedRing& ring, const Residue* p) {
  return ring.from_coords(std::span<const Residue>(p, static_cast<std::size_t>(ring.degree())));
}

}  // namespace

UPoly::UPoly(const UnramifiedRing* ring, std::int64_t low, std::size_t len)
    : ring_(ring), low_(low), len_(len), c_(len * static_cast<std::size_t>(ring->degree()), 0) {}

UPoly UPoly::constant(const UnramifiedElement& c) { return monomial(c, 0); }

UPoly UPoly::monomial(const UnramifiedElement& c, std::int64_t k) {
  UPoly out(c.ring_ptr(), k, 1);
  std::copy(c.data(), c.data() + c.ring().degree(), out.slot(0));
  return out;
}

bool UPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Residue x) { return x == 0; });
}

UnramifiedElement UPoly::coeff(std::int64_t k) const {
  if (len_ == 0 || k < low_ || k > high()) return ring_->zero();
  return element_at(*ring_, slot(static_cast<std::size_t>(k - low_)));
}

void UPoly::widen(std::int64_t lo, std::int64_t hi) {
  if (len_ == 0) {
    low_ = lo;
    len_ = static_cast<std::size_t>(hi - lo + 1);
    c_.assign(len_ * static_cast<std::size_t>(ring_->degree()), 0);
    return;
  }
  if (lo >= low_ && hi <= high()) return;
  const std::int64_t nlo = std::min(lo, low_);
  const std::int64_t nhi = std::max(hi, high());
  const std::size_t m = static_cast<std::size_t>(ring_->degree());
  std::vector<Residue> nc(static_cast<std::size_t>(nhi - nlo + 1) * m, 0);
  std::copy(c_.begin(), c_.end(), nc.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(low_ - nlo) * m));
  c_ = std::move(nc);
  low_ = nlo;
  len_ = static_cast<std::size_t>(nhi - nlo + 1);
}

void UPoly::add_to_coeff(std::int64_t k, const UnramifiedElement& c) {
  widen(k, k);
  Residue* s = slot(static_cast<std::size_t>(k - low_));
  const auto& ctx = ring_->base();
  for (int i = 0; i < ring_->degree(); ++i) s[i] = ctx.add(s[i], c.coord(i));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.len_ == 0) return *this;
  if (ring_ == nullptr) ring_ = o.ring_;
  widen(o.low_, o.high());
  const auto& ctx = ring_->base();
  const std::size_t m = static_cast<std::size_t>(ring_->degree());
  Residue* dst = slot(static_cast<std::size_t>(o.low_ - low_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) dst[i] = ctx.add(dst[i], o.c_[i]);
  (void)m;
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.len_ == 0) return *this;
  if (ring_ == nullptr) ring_ = o.ring_;
  widen(o.low_, o.high());
  const auto& ctx = ring_->base();
  Residue* dst = slot(static_cast<std::size_t>(o.low_ - low_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) dst[i] = ctx.sub(dst[i], o.c_[i]);
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  const auto& ctx = ring_->base();
  for (auto& x : out.c_) x = ctx.neg(x);
  return out;
}

UPoly UPoly::scaled(const UnramifiedElement& c) const {
  UPoly out = *this;
  for (std::size_t i = 0; i < len_; ++i) ring_->mul_into(slot(i), c.data(), out.slot(i));
  return out;
}

UPoly operator*(const UPoly& a, const UPoly& b) { return multiply(a, b); }

UPoly UPoly::power(std::uint64_t k) const {
  if (k == 0) return constant(ring_->one());
  UPoly base = *this;
  base.trim();
  UPoly result;
  bool have = false;
  while (k > 0) {
    if (k & 1) {
      result = have ? multiply(result, base) : base;
      have = true;
    }
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

UPoly UPoly::dilate(std::uint64_t f) const {
  if (f == 0) throw InvalidArgument("dilation factor must be positive");
  if (len_ == 0) return *this;
  const auto fi = static_cast<std::int64_t>(f);
  UPoly out(ring_, low_ * fi, (len_ - 1) * f + 1);
  const std::size_t m = static_cast<std::size_t>(ring_->degree());
  for (std::size_t i = 0; i < len_; ++i) std::copy(slot(i), slot(i) + m, out.slot(i * f));
  return out;
}

UPoly UPoly::divide_linear(const UnramifiedElement& root) const {
  UPoly a = *this;
  a.trim();
  if (a.len_ == 0) return a;
  if (root.is_zero()) {
    // trimmed storage is t^low * f with f(0) != 0, so only the shift remains
    if (a.low_ <= 0) throw PreconditionViolated("divide_linear: remainder is nonzero");
    a.low_ -= 1;
    return a;
  }
  if (a.len_ == 1) throw PreconditionViolated("divide_linear: remainder is nonzero");
  const std::size_t m = static_cast<std::size_t>(ring_->degree());
  UPoly q(ring_, a.low_, a.len_ - 1);
  const auto& ctx = ring_->base();
  std::vector<Residue> carry(m, 0), tmp(m);
  for (std::size_t k = a.len_ - 1; k >= 1; --k) {
    // q_{k-1} = p_k + root * q_k
    Residue* dst = q.slot(k - 1);
    const Residue* src = a.slot(k);
    for (std::size_t i = 0; i < m; ++i) dst[i] = ctx.add(src[i], carry[i]);
    ring_->mul_into(dst, root.data(), tmp.data());
    carry = tmp;
  }
  const Residue* p0 = a.slot(0);
  for (std::size_t i = 0; i < m; ++i)
    if (ctx.add(p0[i], carry[i]) != 0) throw PreconditionViolated("divide_linear: remainder is nonzero");
  return q;
}

void UPoly::trim() {
  if (len_ == 0) return;
  const std::size_t m = static_cast<std::size_t>(ring_->degree());
  auto nonzero = [&](std::size_t i) {
    const Residue* s = slot(i);
    for (std::size_t j = 0; j < m; ++j)
      if (s[j] != 0) return true;
    return false;
  };
  std::size_t lo = 0, hi = len_;
  while (lo < hi && !nonzero(lo)) ++lo;
  while (hi > lo && !nonzero(hi - 1)) --hi;
  if (lo == hi) {
    len_ = 0;
    low_ = 0;
    c_.clear();
    return;
  }
  if (lo == 0 && hi == len_) return;
  std::vector<Residue> nc(c_.begin() + static_cast<std::ptrdiff_t>(lo * m), c_.begin() + static_cast<std::ptrdiff_t>(hi * m));
  c_ = std::move(nc);
  low_ += static_cast<std::int64_t>(lo);
  len_ = hi - lo;
}

bool operator==(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  x.trim();
  y.trim();
  return x.len_ == y.len_ && (x.len_ == 0 || (x.low_ == y.low_ && x.c_ == y.c_));
}

// ---------------------------------------------------------------------------
// Multiplication

namespace {

UPoly schoolbook(const UPoly& a, const UPoly& b) {
  const UnramifiedRing& ring = a.ring();
  const auto& ctx = ring.base();
  const std::size_t m = static_cast<std::size_t>(ring.degree());
  const std::size_t w = 2 * m - 1;
  const std::size_t n = a.size() + b.size() - 1;
  std::vector<Residue> wide(n * w, 0);
  std::vector<UnramifiedElement> ae, be;
  for (std::size_t i = 0; i < a.size(); ++i) ae.push_back(a.coeff(a.low() + static_cast<std::int64_t>(i)));
  for (std::size_t j = 0; j < b.size(); ++j) be.push_back(b.coeff(b.low() + static_cast<std::int64_t>(j)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ae[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      Residue* dst = wide.data() + (i + j) * w;
      for (std::size_t x = 0; x < m; ++x) {
        const Residue ax = ae[i].coord(static_cast<int>(x));
        if (ax == 0) continue;
        for (std::size_t y = 0; y < m; ++y) dst[x + y] = ctx.add(dst[x + y], ctx.mul(ax, be[j].coord(static_cast<int>(y))));
      }
    }
  }
  UPoly out(a.ring_ptr(), a.low() + b.low(), n);
  std::vector<Residue> coords(m);
  for (std::size_t k = 0; k < n; ++k) {
    ring.reduce_wide(wide.data() + k * w, coords.data());
    out.add_to_coeff(out.low() + static_cast<std::int64_t>(k), ring.from_coords(coords));
  }
  return out;
}

int bit_length(std::uint64_t x) { return x == 0 ? 0 : 64 - std::countl_zero(x); }

void put_bits(std::vector<std::uint64_t>& words, std::size_t offset, std::uint64_t value) {
  if (value == 0) return;
  const std::size_t w = offset >> 6;
  const unsigned sh = static_cast<unsigned>(offset & 63);
  words[w] |= value << sh;
  if (sh != 0) words[w + 1] |= value >> (64 - sh);
}

void pack(const UPoly& a, std::size_t stride, std::size_t width, mpz_class& out) {
  const std::size_t m = static_cast<std::size_t>(a.ring().degree());
  const std::size_t total_bits = a.size() * stride * width;
  std::vector<std::uint64_t> words(total_bits / 64 + 2, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto c = a.coeff(a.low() + static_cast<std::int64_t>(k));
    for (std::size_t j = 0; j < m; ++j) put_bits(words, (k * stride + j) * width, c.coord(static_cast<int>(j)));
  }
  mpz_import(out.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
}

UPoly kronecker(const UPoly& a, const UPoly& b, int width) {
  const UnramifiedRing& ring = a.ring();
  const auto& ctx = ring.base();
  const std::size_t m = static_cast<std::size_t>(ring.degree());
  const std::size_t stride = 2 * m - 1;
  const std::size_t W = static_cast<std::size_t>(width);
  mpz_class x, y;
  pack(a, stride, W, x);
  if (&a == &b) {
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
  } else {
    pack(b, stride, W, y);
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  }
  const std::size_t n = a.size() + b.size() - 1;
  const std::size_t slots = n * stride;
  std::vector<std::uint64_t> words(slots * W / 64 + 4, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
  const u128 mask = (u128{1} << W) - 1;
  const u128 mod = ctx.modulus();
  UPoly out(a.ring_ptr(), a.low() + b.low(), n);
  std::vector<Residue> wide(stride), coords(m);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < stride; ++j) {
      const std::size_t off = (k * stride + j) * W;
      const std::size_t w = off >> 6;
      const unsigned sh = static_cast<unsigned>(off & 63);
      u128 v = (static_cast<u128>(words[w]) | (static_cast<u128>(words[w + 1]) << 64)) >> sh;
      if (sh + W > 128) v |= static_cast<u128>(words[w + 2]) << (128 - sh);
      wide[j] = static_cast<Residue>((v & mask) % mod);
    }
    ring.reduce_wide(wide.data(), coords.data());
    out.add_to_coeff(out.low() + static_cast<std::int64_t>(k), ring.from_coords(coords));
  }
  return out;
}

}  // namespace

UPoly multiply(const UPoly& a, const UPoly& b) {
  if (a.size() == 0 || b.size() == 0) return UPoly(a.ring_ptr() ? a.ring_ptr() : b.ring_ptr());
  if (!(a.ring() == b.ring())) throw InvalidArgument("polynomials over different rings");
  const std::size_t m = static_cast<std::size_t>(a.ring().degree());
  const std::size_t shortest = std::min(a.size(), b.size());
  const int width = 2 * bit_length(a.ring().base().modulus() - 1) + bit_length(shortest * m) + 1;
  if (shortest <= 12 || a.size() * b.size() <= 4096 || width > 126) return schoolbook(a, b);
  return kronecker(a, b, width);
}

UPoly evaluate_factor(const LaurentPoly& f, const UnramifiedElement& a) {
  UPoly out(a.ring_ptr());
  std::map<std::int32_t, UnramifiedElement> powers;
  const UnramifiedRing& ring = a.ring();
  for (const auto& term : f.terms()) {
    const std::int32_t b = term.mono[1];
    auto it = powers.find(b);
    if (it == powers.end()) {
      UnramifiedElement v = ring.one();
      if (b > 0) v = a.pow(static_cast<std::uint64_t>(b));
      if (b < 0) {
        if (!a.is_unit()) throw NonUnitAtNegativeExponent("negative exponent at a non-unit coordinate");
        v = a.inverse().pow(static_cast<std::uint64_t>(-static_cast<std::int64_t>(b)));
      }
      it = powers.emplace(b, v).first;
    }
    out.add_to_coeff(term.mono[0], ring.from_mpz(term.coeff) * it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jets

Jet::Jet(const UnramifiedElement& a) : c{a, a.ring().zero(), a.ring().zero(), a.ring().zero()} {}

Jet::Jet(const UnramifiedElement& a, const UnramifiedElement& b1, const UnramifiedElement& b2,
         const UnramifiedElement& b12)
    : c{a, b1, b2, b12} {}

unsigned Jet::mask() const {
  unsigned out = 0;
  for (int i = 0; i < 4; ++i)
    if (!c[static_cast<std::size_t>(i)].is_zero()) out |= 1u << i;
  return out;
}

bool Jet::is_zero() const { return mask() == 0; }

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.c[0] = a.c[0] * b.c[0];
  r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0];
  r.c[2] = a.c[0] * b.c[2] + a.c[2] * b.c[0];
  r.c[3] = a.c[0] * b.c[3] + a.c[3] * b.c[0] + a.c[1] * b.c[2] + a.c[2] * b.c[1];
  return r;
}

Jet Jet::operator-() const { return Jet(-c[0], -c[1], -c[2], -c[3]); }

Jet Jet::inverse() const {
  const UnramifiedElement i = c[0].inverse();
  const UnramifiedElement i2 = i * i;
  const UnramifiedElement two = ring().from_int(2);
  return Jet(i, -(i2 * c[1]), -(i2 * c[2]), two * i2 * i * c[1] * c[2] - i2 * c[3]);
}

Jet Jet::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  const UnramifiedRing& R = ring();
  if (k == 0) return Jet(R.one());
  if (k == 1) return *this;
  const auto& ctx = R.base();
  const auto ku = static_cast<std::uint64_t>(k);
  const Residue kk = static_cast<Residue>(ku % ctx.modulus());
  const Residue kk1 = static_cast<Residue>(static_cast<u128>(ku) * (ku - 1) % ctx.modulus());
  const UnramifiedElement a2 = c[0].pow(ku - 2);
  const UnramifiedElement a1 = a2 * c[0];
  Jet r;
  r.c[0] = a1 * c[0];
  r.c[1] = (a1 * c[1]).scaled(kk);
  r.c[2] = (a1 * c[2]).scaled(kk);
  r.c[3] = (a1 * c[3]).scaled(kk) + (a2 * c[1] * c[2]).scaled(kk1);
  return r;
}

bool operator==(const Jet& a, const Jet& b) { return a.c == b.c; }

JetMatrixParts split(const Matrix<Jet>& m) {
  JetMatrixParts out;
  const UnramifiedElement z = m(0, 0).ring().zero();
  out.c0 = out.c1 = out.c2 = out.c12 = Matrix<UnramifiedElement>(m.rows(), m.cols(), z);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.c0(i, j) = m(i, j).c[0];
      out.c1(i, j) = m(i, j).c[1];
      out.c2(i, j) = m(i, j).c[2];
      out.c12(i, j) = m(i, j).c[3];
    }
  return out;
}

// ---------------------------------------------------------------------------
// Jet polynomials

JetPoly::JetPoly(const UnramifiedRing* ring) : ring_(ring) {
  for (auto& p : c_) p = UPoly(ring);
}

JetPoly JetPoly::from(const UPoly& p0) {
  JetPoly out(p0.ring_ptr());
  out.set_part(0, p0);
  return out;
}

void JetPoly::set_part(int i, UPoly p) {
  const auto idx = static_cast<std::size_t>(i);
  if (p.is_zero()) {
    c_[idx] = UPoly(ring_);
    mask_ &= ~(1u << i);
  } else {
    c_[idx] = std::move(p);
    mask_ |= 1u << i;
  }
}

Jet JetPoly::coeff(std::int64_t k) const {
  return Jet(c_[0].coeff(k), c_[1].coeff(k), c_[2].coeff(k), c_[3].coeff(k));
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  if (ring_ == nullptr) *this = JetPoly(o.ring_);
  for (int i = 0; i < 4; ++i)
    if (o.mask_ & (1u << i)) set_part(i, c_[static_cast<std::size_t>(i)] + o.c_[static_cast<std::size_t>(i)]);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  if (ring_ == nullptr) *this = JetPoly(o.ring_);
  for (int i = 0; i < 4; ++i)
    if (o.mask_ & (1u << i)) set_part(i, c_[static_cast<std::size_t>(i)] - o.c_[static_cast<std::size_t>(i)]);
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  JetPoly out(a.ring_);
  auto has = [](const JetPoly& x, int i) { return (x.mask_ & (1u << i)) != 0; };
  auto prod = [&](int i, int j) { return multiply(a.c_[static_cast<std::size_t>(i)], b.c_[static_cast<std::size_t>(j)]); };
  const std::array<std::vector<std::pair<int, int>>, 4> recipe{{
      {{0, 0}},
      {{0, 1}, {1, 0}},
      {{0, 2}, {2, 0}},
      {{0, 3}, {3, 0}, {1, 2}, {2, 1}},
  }};
  for (int k = 0; k < 4; ++k) {
    UPoly acc(a.ring_);
    bool any = false;
    for (const auto& [i, j] : recipe[static_cast<std::size_t>(k)]) {
      if (!has(a, i) || !has(b, j)) continue;
      acc += prod(i, j);
      any = true;
    }
    if (any) out.set_part(k, std::move(acc));
  }
  return out;
}

JetPoly JetPoly::scaled(const Jet& c) const {
  JetPoly k(ring_);
  for (int i = 0; i < 4; ++i) k.set_part(i, UPoly::constant(c.c[static_cast<std::size_t>(i)]));
  return *this * k;
}

JetPoly JetPoly::power(std::uint64_t k) const {
  if (k == 0) return JetPoly::from(UPoly::constant(ring_->one()));
  if (k == 1) return *this;
  const auto& ctx = ring_->base();
  const Residue kk = static_cast<Residue>(k % ctx.modulus());
  const Residue kk1 = static_cast<Residue>(static_cast<u128>(k) * (k - 1) % ctx.modulus());
  const bool first = (mask_ & (kJ1 | kJ2 | kJ12)) != 0 && kk != 0;
  const bool second = (mask_ & kJ1) && (mask_ & kJ2) && kk1 != 0;
  const UPoly& p0 = c_[0];
  JetPoly out(ring_);
  if (!first && !second) {
    out.set_part(0, p0.power(k));
    return out;
  }
  UPoly pm2, pm1;
  if (second) {
    pm2 = p0.power(k - 2);
    pm1 = multiply(pm2, p0);
  } else {
    pm1 = p0.power(k - 1);
  }
  out.set_part(0, multiply(pm1, p0));
  const UnramifiedElement K = ring_->from_int(static_cast<std::int64_t>(kk));
  if (first) {
    if (mask_ & kJ1) out.set_part(1, multiply(pm1, c_[1]).scaled(K));
    if (mask_ & kJ2) out.set_part(2, multiply(pm1, c_[2]).scaled(K));
  }
  UPoly c12(ring_);
  if (first && (mask_ & kJ12)) c12 += multiply(pm1, c_[3]).scaled(K);
  if (second) c12 += multiply(multiply(pm2, c_[1]), c_[2]).scaled(ring_->from_int(static_cast<std::int64_t>(kk1)));
  out.set_part(3, std::move(c12));
  return out;
}

JetPoly JetPoly::dilate(std::uint64_t f) const {
  JetPoly out(ring_);
  for (int i = 0; i < 4; ++i)
    if (mask_ & (1u << i)) out.set_part(i, c_[static_cast<std::size_t>(i)].dilate(f));
  return out;
}

// ---------------------------------------------------------------------------
// Points

JetPoint frobenius(const JetPoint& pt, int k) {
  if (k == 0 || pt.empty()) return pt;
  std::int64_t e = 1;
  const auto p = static_cast<std::int64_t>(pt[0].ring().prime());
  for (int i = 0; i < k; ++i) e *= p;
  JetPoint out;
  out.reserve(pt.size());
  for (const auto& x : pt) out.push_back(x.pow(e));
  return out;
}

JetPoint make_jet_point(std::span<const UnramifiedElement> a, int v, int u) {
  JetPoint out;
  for (const auto& x : a) out.emplace_back(x);
  if (v >= 0) out.at(static_cast<std::size_t>(v)).c[1] = a[0].ring().one();
  if (u >= 0) out.at(static_cast<std::size_t>(u)).c[2] = a[0].ring().one();
  return out;
}

namespace {

JetPoly factor_at(const LaurentPoly& f, const Jet& z) {
  const unsigned mask = z.mask();
  JetPoly out = JetPoly::from(evaluate_factor(f, z.c[0]));
  if ((mask & (kJ1 | kJ2 | kJ12)) == 0) return out;
  const LaurentPoly d1 = f.derivative_z(0);
  const UPoly f1 = evaluate_factor(d1, z.c[0]);
  if (mask & kJ1) out.set_part(1, f1.scaled(z.c[1]));
  if (mask & kJ2) out.set_part(2, f1.scaled(z.c[2]));
  UPoly c12(z.c[0].ring_ptr());
  if (mask & kJ12) c12 += f1.scaled(z.c[3]);
  if ((mask & kJ1) && (mask & kJ2)) c12 += evaluate_factor(d1.derivative_z(0), z.c[0]).scaled(z.c[1] * z.c[2]);
  out.set_part(3, std::move(c12));
  return out;
}

}  // namespace

JetPoly evaluate(const LaurentPoly& f, const JetPoint& pt) {
  if (f.layout().r != 1) throw DimensionUnsupported("jet evaluation needs r = 1");
  if (static_cast<int>(pt.size()) != f.layout().n) throw InvalidArgument("point dimension does not match layout");
  const UnramifiedRing* ring = pt.at(0).c[0].ring_ptr();
  std::array<UPoly, 4> parts{UPoly(ring), UPoly(ring), UPoly(ring), UPoly(ring)};
  std::map<std::pair<int, std::int32_t>, Jet> powers;
  for (const auto& term : f.terms()) {
    Jet v(ring->from_mpz(term.coeff));
    for (int i = 0; i < f.layout().n; ++i) {
      const std::int32_t b = term.mono[1 + i];
      if (b == 0) continue;
      auto key = std::make_pair(i, b);
      auto it = powers.find(key);
      if (it == powers.end()) {
        const Jet& z = pt[static_cast<std::size_t>(i)];
        if (b < 0 && !z.is_unit()) throw NonUnitAtNegativeExponent("negative exponent at a non-unit coordinate");
        it = powers.emplace(key, z.pow(b)).first;
      }
      v = v * it->second;
    }
    for (std::size_t k = 0; k < 4; ++k)
      if (!v.c[k].is_zero()) parts[k].add_to_coeff(term.mono[0], v.c[k]);
  }
  JetPoly out(ring);
  for (int k = 0; k < 4; ++k) out.set_part(k, std::move(parts[static_cast<std::size_t>(k)]));
  return out;
}

JetPoly evaluate(const FactoredPoly& f, const JetPoint& pt) {
  if (f.layout().r != 1) throw DimensionUnsupported("jet evaluation needs r = 1");
  if (static_cast<int>(pt.size()) != f.layout().n) throw InvalidArgument("point dimension does not match layout");
  const UnramifiedRing* ring = pt.at(0).c[0].ring_ptr();
  JetPoly total(ring);
  std::map<std::pair<const LaurentPoly*, std::size_t>, JetPoly> cache;
  for (const auto& term : f.terms()) {
    JetPoly acc = JetPoly::from(UPoly::constant(ring->from_mpz(term.coeff)));
    if (term.core) acc = acc * evaluate(*term.core, pt);
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const auto& fac = term.factors[i];
      if (!fac) continue;
      auto key = std::make_pair(fac.get(), i);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, factor_at(*fac, pt[i])).first;
      acc = acc * it->second;
    }
    total += acc;
  }
  return total;
}

}  // namespace dkz
