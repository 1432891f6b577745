#include "dkz/ring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace dkz {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ModulusContext::ModulusContext(std::uint64_t p, int precision) : p_(p), precision_(precision) {
  if (!is_prime(p)) throw InvalidArgument("p not prime: " + std::to_string(p));
  if (p == 2) throw InvalidArgument("p must be an odd prime");
  if (precision < 1) throw InvalidArgument("precision M must be >= 1");
  powers_.push_back(1);
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  for (int k = 1; k <= precision; ++k) {
    if (powers_.back() > limit / p) {
      throw InvalidArgument("p^M exceeds 62 bits (p=" + std::to_string(p) +
                            ", M=" + std::to_string(precision) + ")");
    }
    powers_.push_back(powers_.back() * p);
  }
  modulus_ = powers_.back();
}

Residue ModulusContext::reduce(std::int64_t a) const {
  const auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

Residue ModulusContext::reduce(const mpz_class& a) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), modulus_);
  return static_cast<Residue>(r.get_ui());
}

Residue ModulusContext::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % modulus_;
  Residue base = a % modulus_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

PadicValuation valuation(Residue a, const ModulusContext& ctx) {
  a %= ctx.modulus();
  if (a == 0) return {ctx.precision(), true};
  int v = 0;
  while (a % ctx.prime() == 0) {
    a /= ctx.prime();
    ++v;
  }
  return {v, v >= ctx.precision()};
}

PadicValuation valuation(const mpz_class& a, std::uint64_t p, int cap) {
  if (a == 0) return {cap, true};
  mpz_class x = abs(a);
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  return {v, v >= cap};
}

Residue invert_mod(Residue a, const ModulusContext& ctx) {
  const Residue m = ctx.modulus();
  a %= m;
  if (a % ctx.prime() == 0) {
    throw NotAUnit("not a unit modulo p^M: " + std::to_string(a));
  }
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<Residue>(inv);
}

// ---------------------------------------------------------------------------
// Defining polynomial search

namespace {

// Remainder of monic `a` (coefficients low to high, implicit leading 1 not
// stored) modulo monic `d`, arithmetic in F_p. Returns true if the remainder is zero.
bool divides_mod_p(const std::vector<std::uint64_t>& d, const std::vector<std::uint64_t>& a,
                   std::uint64_t p) {
  // Materialize full coefficient vectors including leading ones.
  std::vector<std::uint64_t> rem(a);
  rem.push_back(1);
  std::vector<std::uint64_t> div(d);
  div.push_back(1);
  const std::size_t dd = div.size() - 1;
  for (std::size_t top = rem.size() - 1; top >= dd; --top) {
    const std::uint64_t c = rem[top] % p;
    if (c != 0) {
      for (std::size_t i = 0; i <= dd; ++i) {
        std::uint64_t& slot = rem[top - dd + i];
        slot = (slot + p - (c * div[i]) % p) % p;
      }
    }
    if (top == 0) break;
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (rem[i] % p != 0) return false;
  }
  return true;
}

bool irreducible_mod_p(const std::vector<std::uint64_t>& h, std::uint64_t p) {
  const int m = static_cast<int>(h.size());
  for (int d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(d));
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t x = k;
      for (int i = 0; i < d; ++i) {
        cand[static_cast<std::size_t>(i)] = x % p;
        x /= p;
      }
      if (divides_mod_p(cand, h, p)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Residue> smallest_irreducible_mod_p(std::uint64_t p, int degree) {
  if (degree < 1 || degree > kMaxExtensionDegree) {
    throw InvalidArgument("extension degree must be in [1, " +
                          std::to_string(kMaxExtensionDegree) + "]");
  }
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  std::vector<Residue> h(static_cast<std::size_t>(degree));
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t x = k;
    for (int i = 0; i < degree; ++i) {
      h[static_cast<std::size_t>(i)] = x % p;
      x /= p;
    }
    if (irreducible_mod_p(h, p)) return h;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

// ---------------------------------------------------------------------------
// UnramifiedRing

UnramifiedRing::UnramifiedRing(ModulusContext ctx, int degree)
    : ctx_(std::move(ctx)), degree_(degree), h_(smallest_irreducible_mod_p(ctx_.prime(), degree)) {}

std::string UnramifiedRing::defining_polynomial_string() const {
  std::ostringstream os;
  os << "w^" << degree_;
  for (int i = degree_ - 1; i >= 0; --i) {
    const Residue c = h_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    os << " + " << c;
    if (i >= 1) os << "*w";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::uint64_t UnramifiedRing::residue_field_size() const {
  std::uint64_t q = 1;
  for (int i = 0; i < degree_; ++i) q *= ctx_.prime();
  return q;
}

UnramifiedElement UnramifiedRing::zero() const { return UnramifiedElement(this); }

UnramifiedElement UnramifiedRing::one() const {
  UnramifiedElement e(this);
  e.data()[0] = 1 % ctx_.modulus();
  return e;
}

UnramifiedElement UnramifiedRing::from_int(std::int64_t a) const {
  UnramifiedElement e(this);
  e.data()[0] = ctx_.reduce(a);
  return e;
}

UnramifiedElement UnramifiedRing::from_mpz(const mpz_class& a) const {
  UnramifiedElement e(this);
  e.data()[0] = ctx_.reduce(a);
  return e;
}

UnramifiedElement UnramifiedRing::from_coords(std::span<const Residue> coords) const {
  if (coords.size() != static_cast<std::size_t>(degree_)) {
    throw InvalidArgument("coordinate count does not match extension degree");
  }
  UnramifiedElement e(this);
  for (int i = 0; i < degree_; ++i) e.data()[i] = coords[static_cast<std::size_t>(i)] % ctx_.modulus();
  return e;
}

UnramifiedElement UnramifiedRing::residue_from_index(std::uint64_t k) const {
  UnramifiedElement e(this);
  for (int i = 0; i < degree_; ++i) {
    e.data()[i] = k % ctx_.prime();
    k /= ctx_.prime();
  }
  return e;
}

void UnramifiedRing::mul_into(const Residue* a, const Residue* b, Residue* out) const {
  const Residue mod = ctx_.modulus();
  if (degree_ == 1) {
    out[0] = ctx_.mul(a[0], b[0]);
    return;
  }
  std::array<Residue, 2 * kMaxExtensionDegree> wide{};
  for (int k = 0; k < 2 * degree_ - 1; ++k) {
    unsigned __int128 acc = 0;
    const int lo = std::max(0, k - degree_ + 1);
    const int hi = std::min(k, degree_ - 1);
    for (int i = lo; i <= hi; ++i) {
      acc += static_cast<unsigned __int128>(a[i]) * b[k - i];
    }
    wide[static_cast<std::size_t>(k)] = static_cast<Residue>(acc % mod);
  }
  reduce_wide(wide.data(), out);
}

void UnramifiedRing::reduce_wide(Residue* wide, Residue* out) const {
  for (int k = 2 * degree_ - 2; k >= degree_; --k) {
    const Residue c = wide[k];
    if (c == 0) continue;
    for (int i = 0; i < degree_; ++i) {
      Residue& slot = wide[k - degree_ + i];
      slot = ctx_.sub(slot, ctx_.mul(c, h_[static_cast<std::size_t>(i)]));
    }
  }
  for (int i = 0; i < degree_; ++i) out[i] = wide[i];
}

// ---------------------------------------------------------------------------
// UnramifiedElement

bool UnramifiedElement::is_zero() const {
  for (int i = 0; i < ring_->degree(); ++i) {
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

bool UnramifiedElement::is_unit() const {
  const auto p = ring_->prime();
  for (int i = 0; i < ring_->degree(); ++i) {
    if (c_[static_cast<std::size_t>(i)] % p != 0) return true;
  }
  return false;
}

UnramifiedElement UnramifiedElement::reduce_mod_p() const {
  UnramifiedElement r(ring_);
  for (int i = 0; i < ring_->degree(); ++i) r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)] % ring_->prime();
  return r;
}

UnramifiedElement UnramifiedElement::inverse() const {
  if (!is_unit()) throw NotAUnit("element is not a unit: " + to_string());
  if (ring_->degree() == 1) {
    UnramifiedElement r(ring_);
    r.c_[0] = invert_mod(c_[0], ring_->base());
    return r;
  }
  // Inverse modulo p from Lagrange in F_{p^m}^*, then Newton lifting.
  UnramifiedElement y = pow(ring_->residue_field_size() - 2);
  const UnramifiedElement two = ring_->from_int(2);
  for (int correct = 1; correct < ring_->precision(); correct *= 2) {
    y = y * (two - (*this) * y);
  }
  return y;
}

UnramifiedElement UnramifiedElement::pow(std::uint64_t e) const {
  UnramifiedElement result = ring_->one();
  UnramifiedElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

UnramifiedElement UnramifiedElement::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(mpz_class(-e));
  UnramifiedElement result = ring_->one();
  UnramifiedElement base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result *= base;
    if (i + 1 < bits) base *= base;
  }
  return result;
}

UnramifiedElement& UnramifiedElement::operator+=(const UnramifiedElement& o) {
  const auto& ctx = ring_->base();
  for (int i = 0; i < ring_->degree(); ++i) {
    c_[static_cast<std::size_t>(i)] = ctx.add(c_[static_cast<std::size_t>(i)], o.c_[static_cast<std::size_t>(i)]);
  }
  return *this;
}

UnramifiedElement& UnramifiedElement::operator-=(const UnramifiedElement& o) {
  const auto& ctx = ring_->base();
  for (int i = 0; i < ring_->degree(); ++i) {
    c_[static_cast<std::size_t>(i)] = ctx.sub(c_[static_cast<std::size_t>(i)], o.c_[static_cast<std::size_t>(i)]);
  }
  return *this;
}

UnramifiedElement& UnramifiedElement::operator*=(const UnramifiedElement& o) {
  std::array<Residue, kMaxExtensionDegree> out{};
  ring_->mul_into(c_.data(), o.c_.data(), out.data());
  c_ = out;
  return *this;
}

UnramifiedElement UnramifiedElement::operator-() const {
  UnramifiedElement r(ring_);
  for (int i = 0; i < ring_->degree(); ++i) {
    r.c_[static_cast<std::size_t>(i)] = ring_->base().neg(c_[static_cast<std::size_t>(i)]);
  }
  return r;
}

UnramifiedElement UnramifiedElement::scaled(Residue k) const {
  UnramifiedElement r(ring_);
  const auto& ctx = ring_->base();
  k %= ctx.modulus();
  for (int i = 0; i < ring_->degree(); ++i) {
    r.c_[static_cast<std::size_t>(i)] = ctx.mul(c_[static_cast<std::size_t>(i)], k);
  }
  return r;
}

bool operator==(const UnramifiedElement& a, const UnramifiedElement& b) {
  if (a.ring_->degree() != b.ring_->degree()) return false;
  for (int i = 0; i < a.ring_->degree(); ++i) {
    if (a.c_[static_cast<std::size_t>(i)] != b.c_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

std::string UnramifiedElement::to_string() const {
  if (ring_->degree() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < ring_->degree(); ++i) {
    if (i) os << ",";
    os << c_[static_cast<std::size_t>(i)];
  }
  os << ")";
  return os.str();
}

PadicValuation valuation(const UnramifiedElement& a) {
  const auto& ctx = a.ring().base();
  PadicValuation best{ctx.precision(), true};
  for (int i = 0; i < a.ring().degree(); ++i) {
    const PadicValuation v = valuation(a.coord(i), ctx);
    if (v.value < best.value) best = v;
  }
  return best;
}

UnramifiedElement teichmuller_lift(std::span<const Residue> u, const UnramifiedRing& ring) {
  UnramifiedElement a = ring.from_coords(u).reduce_mod_p();
  const std::uint64_t q = ring.residue_field_size();
  // Each iteration of a -> a^q gains one p-adic digit.
  for (int i = 0; i <= ring.precision(); ++i) {
    UnramifiedElement next = a.pow(q);
    if (next == a) return a;
    a = next;
  }
  return a;
}

UnramifiedElement teichmuller_lift(Residue u, const UnramifiedRing& ring) {
  std::array<Residue, kMaxExtensionDegree> coords{};
  coords[0] = u;
  return teichmuller_lift(std::span<const Residue>(coords.data(), static_cast<std::size_t>(ring.degree())), ring);
}

UnramifiedElement frobenius(const UnramifiedElement& a, int k) {
  UnramifiedElement r = a;
  for (int i = 0; i < k; ++i) r = r.pow(a.ring().prime());
  return r;
}

}  // namespace dkz
