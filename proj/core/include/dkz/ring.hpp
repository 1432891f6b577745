#pragma once

// Exact residue arithmetic in Z/p^M and in the truncated unramified ring
// Z_p^(m) / p^M = (Z/p^M)[w] / (h(w)), where h is monic of degree m and
// irreducible modulo p.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dkz/errors.hpp"

namespace dkz {

using Residue = std::uint64_t;

/// Largest extension degree m supported by UnramifiedElement's inline storage.
inline constexpr int kMaxExtensionDegree = 6;

bool is_prime(std::uint64_t n);

/// A prime p together with a working precision M; residues live in [0, p^M).
/// p^M must fit in 62 bits so that products fit in unsigned __int128.
class ModulusContext {
 public:
  ModulusContext(std::uint64_t p, int precision);

  std::uint64_t prime() const { return p_; }
  int precision() const { return precision_; }
  Residue modulus() const { return modulus_; }
  /// p^k for 0 <= k <= M.
  Residue prime_power(int k) const { return powers_.at(static_cast<std::size_t>(k)); }

  Residue reduce(std::int64_t a) const;
  Residue reduce(const mpz_class& a) const;
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + modulus_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : modulus_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % modulus_);
  }
  Residue pow(Residue a, std::uint64_t e) const;

  /// Same prime at a different precision.
  ModulusContext with_precision(int precision) const { return ModulusContext(p_, precision); }

  friend bool operator==(const ModulusContext& a, const ModulusContext& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_;
  }

 private:
  std::uint64_t p_;
  int precision_;
  Residue modulus_;
  std::vector<Residue> powers_;
};

/// min(M, v_p(a)); `saturated` marks that the true valuation may be larger.
struct PadicValuation {
  int value = 0;
  bool saturated = false;

  friend bool operator==(const PadicValuation&, const PadicValuation&) = default;
};

PadicValuation valuation(Residue a, const ModulusContext& ctx);
/// Valuation of an exact integer, capped at `cap`.
PadicValuation valuation(const mpz_class& a, std::uint64_t p, int cap);

/// Inverse of a unit modulo p^M (extended Euclid). Throws NotAUnit when p | a.
Residue invert_mod(Residue a, const ModulusContext& ctx);

class UnramifiedElement;

/// (Z/p^M)[w]/(h(w)). The defining polynomial is the smallest monic degree-m
/// polynomial irreducible mod p, ordering candidates by sum h_i p^i.
class UnramifiedRing {
 public:
  UnramifiedRing(ModulusContext ctx, int degree);

  const ModulusContext& base() const { return ctx_; }
  std::uint64_t prime() const { return ctx_.prime(); }
  int precision() const { return ctx_.precision(); }
  int degree() const { return degree_; }
  /// Coefficients h_0 .. h_{m-1} of the monic defining polynomial.
  std::span<const Residue> defining_polynomial() const { return {h_.data(), h_.size()}; }
  std::string defining_polynomial_string() const;
  /// p^m, the size of the residue field.
  std::uint64_t residue_field_size() const;

  UnramifiedElement zero() const;
  UnramifiedElement one() const;
  UnramifiedElement from_int(std::int64_t a) const;
  UnramifiedElement from_mpz(const mpz_class& a) const;
  UnramifiedElement from_coords(std::span<const Residue> coords) const;
  /// Residue-field element with index k in [0, p^m): base-p digits of k are its coordinates.
  UnramifiedElement residue_from_index(std::uint64_t k) const;

  // Raw coordinate arithmetic used by the polynomial kernels.
  void mul_into(const Residue* a, const Residue* b, Residue* out) const;
  /// Reduce a length 2m-1 product (entries < p^M) modulo h, writing m coordinates.
  void reduce_wide(Residue* wide, Residue* out) const;

  friend bool operator==(const UnramifiedRing& a, const UnramifiedRing& b) {
    return a.ctx_ == b.ctx_ && a.degree_ == b.degree_ && a.h_ == b.h_;
  }

 private:
  ModulusContext ctx_;
  int degree_;
  std::vector<Residue> h_;
};

std::vector<Residue> smallest_irreducible_mod_p(std::uint64_t p, int degree);

/// Element of an UnramifiedRing. The ring must outlive the element.
class UnramifiedElement {
 public:
  UnramifiedElement() = default;
  explicit UnramifiedElement(const UnramifiedRing* ring) : ring_(ring) {}

  const UnramifiedRing& ring() const { return *ring_; }
  const UnramifiedRing* ring_ptr() const { return ring_; }
  std::span<const Residue> coords() const {
    return {c_.data(), static_cast<std::size_t>(ring_->degree())};
  }
  Residue coord(int i) const { return c_[static_cast<std::size_t>(i)]; }
  Residue* data() { return c_.data(); }
  const Residue* data() const { return c_.data(); }

  bool is_zero() const;
  /// Unit iff the reduction to F_{p^m} is nonzero.
  bool is_unit() const;
  UnramifiedElement inverse() const;
  UnramifiedElement pow(std::uint64_t e) const;
  UnramifiedElement pow(const mpz_class& e) const;
  /// Reduction modulo p, coordinates in [0, p).
  UnramifiedElement reduce_mod_p() const;

  UnramifiedElement& operator+=(const UnramifiedElement& o);
  UnramifiedElement& operator-=(const UnramifiedElement& o);
  UnramifiedElement& operator*=(const UnramifiedElement& o);
  friend UnramifiedElement operator+(UnramifiedElement a, const UnramifiedElement& b) { return a += b; }
  friend UnramifiedElement operator-(UnramifiedElement a, const UnramifiedElement& b) { return a -= b; }
  friend UnramifiedElement operator*(UnramifiedElement a, const UnramifiedElement& b) { return a *= b; }
  UnramifiedElement operator-() const;
  UnramifiedElement scaled(Residue k) const;

  friend bool operator==(const UnramifiedElement& a, const UnramifiedElement& b);

  std::string to_string() const;

 private:
  const UnramifiedRing* ring_ = nullptr;
  std::array<Residue, kMaxExtensionDegree> c_{};
};

PadicValuation valuation(const UnramifiedElement& a);

/// Teichmuller lift of the residue-field element with coordinates `u` (each in [0,p)).
UnramifiedElement teichmuller_lift(std::span<const Residue> u, const UnramifiedRing& ring);
UnramifiedElement teichmuller_lift(Residue u, const UnramifiedRing& ring);

/// a^{p^k}. On Teichmuller lifts this is the k-th power of Frobenius.
UnramifiedElement frobenius(const UnramifiedElement& a, int k);

}  // namespace dkz
