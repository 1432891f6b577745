#pragma once

// Dense Laurent polynomials in one variable t over an UnramifiedRing, and
// first/second order jets used to evaluate derivatives at a point.
//
// A Jet is a + b1*e1 + b2*e2 + b12*e1*e2 with e1^2 = e2^2 = 0.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dkz/factored.hpp"
#include "dkz/laurent.hpp"
#include "dkz/matrix.hpp"
#include "dkz/ring.hpp"

namespace dkz {

class UPoly {
 public:
  UPoly() = default;
  /// Zero polynomial with room for t^low .. t^{low+len-1}.
  UPoly(const UnramifiedRing* ring, std::int64_t low = 0, std::size_t len = 0);

  static UPoly constant(const UnramifiedElement& c);
  /// c * t^k
  static UPoly monomial(const UnramifiedElement& c, std::int64_t k);

  const UnramifiedRing& ring() const { return *ring_; }
  const UnramifiedRing* ring_ptr() const { return ring_; }
  std::int64_t low() const { return low_; }
  std::size_t size() const { return len_; }
  std::int64_t high() const { return low_ + static_cast<std::int64_t>(len_) - 1; }
  bool is_zero() const;

  UnramifiedElement coeff(std::int64_t k) const;
  void add_to_coeff(std::int64_t k, const UnramifiedElement& c);

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const UnramifiedElement& c) const;
  UPoly power(std::uint64_t k) const;
  /// t -> t^f.
  UPoly dilate(std::uint64_t f) const;
  /// Exact quotient by (t - root); throws PreconditionViolated if the remainder is nonzero.
  UPoly divide_linear(const UnramifiedElement& root) const;
  /// Drop zero coefficients at both ends.
  void trim();

  friend bool operator==(const UPoly& a, const UPoly& b);

 private:
  Residue* slot(std::size_t i) { return c_.data() + i * static_cast<std::size_t>(ring_->degree()); }
  const Residue* slot(std::size_t i) const { return c_.data() + i * static_cast<std::size_t>(ring_->degree()); }
  void widen(std::int64_t lo, std::int64_t hi);

  const UnramifiedRing* ring_ = nullptr;
  std::int64_t low_ = 0;
  std::size_t len_ = 0;
  std::vector<Residue> c_;
};

/// Product by Kronecker substitution through GMP (falls back to schoolbook for short inputs).
UPoly multiply(const UPoly& a, const UPoly& b);

/// Evaluate a polynomial in kFactorLayout (t, z) at z = a, as a polynomial in t.
UPoly evaluate_factor(const LaurentPoly& f, const UnramifiedElement& a);

// ---------------------------------------------------------------------------

enum JetPart : unsigned { kJ0 = 1, kJ1 = 2, kJ2 = 4, kJ12 = 8 };

struct Jet {
  std::array<UnramifiedElement, 4> c;  // 1, e1, e2, e1*e2

  Jet() = default;
  explicit Jet(const UnramifiedElement& a);
  Jet(const UnramifiedElement& a, const UnramifiedElement& b1, const UnramifiedElement& b2,
      const UnramifiedElement& b12);

  const UnramifiedRing& ring() const { return c[0].ring(); }
  const UnramifiedElement& value() const { return c[0]; }
  unsigned mask() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet operator-() const;
  Jet inverse() const;
  /// Integer power; negative exponents need a unit value part.
  Jet pow(std::int64_t k) const;
  bool is_unit() const { return c[0].is_unit(); }
  bool is_zero() const;

  friend bool operator==(const Jet& a, const Jet& b);
};

inline Jet zero_like(const Jet& x) { return Jet(x.ring().zero()); }
inline Jet one_like(const Jet& x) { return Jet(x.ring().one()); }

/// Matrix of jets split into its four component matrices.
struct JetMatrixParts {
  Matrix<UnramifiedElement> c0, c1, c2, c12;
};
JetMatrixParts split(const Matrix<Jet>& m);

class JetPoly {
 public:
  JetPoly() = default;
  explicit JetPoly(const UnramifiedRing* ring);
  static JetPoly from(const UPoly& p0);

  const UnramifiedRing& ring() const { return *ring_; }
  unsigned mask() const { return mask_; }
  const UPoly& part(int i) const { return c_[static_cast<std::size_t>(i)]; }
  void set_part(int i, UPoly p);

  Jet coeff(std::int64_t k) const;

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  JetPoly scaled(const Jet& c) const;
  JetPoly power(std::uint64_t k) const;
  JetPoly dilate(std::uint64_t f) const;

 private:
  const UnramifiedRing* ring_ = nullptr;
  unsigned mask_ = 0;
  std::array<UPoly, 4> c_;
};

/// A point of (ring)^n with jet coordinates.
using JetPoint = std::vector<Jet>;

/// Coordinatewise p^k-th power (the action of sigma^k on the point).
JetPoint frobenius(const JetPoint& pt, int k);

/// Plain point -> jet point; optionally perturb z_v by e1 and z_u by e2 (u == v adds both to z_v).
JetPoint make_jet_point(std::span<const UnramifiedElement> a, int v = -1, int u = -1);

/// Evaluate a factored polynomial in the layout (1, n) at a jet point, as a jet polynomial in t.
JetPoly evaluate(const FactoredPoly& f, const JetPoint& pt);
/// Same for a plain LaurentPoly with r = 1.
JetPoly evaluate(const LaurentPoly& f, const JetPoint& pt);

}  // namespace dkz
