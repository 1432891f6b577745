#pragma once

// Sparse multivariate Laurent polynomials with exact integer coefficients in
// two variable blocks t = (t_1..t_r) and z = (z_1..z_n). Variable index
// order is t_1..t_r, z_1..z_n; all indices in this API are 0-based.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dkz/errors.hpp"
#include "dkz/ring.hpp"

namespace dkz {

inline constexpr int kMaxVars = 16;

struct VarLayout {
  int r = 1;
  int n = 1;

  int nvars() const { return r + n; }
  void validate() const;
  friend bool operator==(const VarLayout&, const VarLayout&) = default;
};

struct Monomial {
  std::array<std::int32_t, kMaxVars> e{};

  std::int32_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
  std::int32_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Checked conversion of a 64-bit exponent to the stored width.
std::int32_t checked_exponent(std::int64_t x);
Monomial add_exponents(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpz_class coeff;
};

enum class SigmaScope { All, ZOnly };

/// Newton polytope with respect to t only. For r = 1 this is the interval
/// [lo[0], hi[0]]; for r > 1 it is the exact support set plus its bounding box.
struct LatticePolytopeT {
  int r = 1;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  std::vector<std::vector<std::int64_t>> points;  // r > 1 only

  static LatticePolytopeT interval(std::int64_t lo, std::int64_t hi);
  bool contains(std::span<const std::int64_t> v) const;
};

/// Minkowski sum of intervals with integer scale factors (r = 1).
LatticePolytopeT scaled_interval_sum(const std::vector<LatticePolytopeT>& parts,
                                     const std::vector<std::int64_t>& scales);

/// Result of scanning coefficients for divisibility by p^claimed.
struct ValuationScan {
  PadicValuation min;                 // over all coefficients, capped
  std::optional<Monomial> witness;    // first monomial with valuation < claimed
  std::optional<PadicValuation> witness_valuation;
  std::size_t coefficients = 0;       // number of coefficients inspected
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(VarLayout layout, mpz_class modulus = 0);

  static LaurentPoly constant(VarLayout layout, const mpz_class& c, const mpz_class& modulus = 0);
  static LaurentPoly monomial(VarLayout layout, const Monomial& m, const mpz_class& c,
                              const mpz_class& modulus = 0);
  static LaurentPoly t_var(VarLayout layout, int i);
  static LaurentPoly z_var(VarLayout layout, int i);
  /// Terms may be unsorted and contain duplicates or zeros.
  static LaurentPoly from_terms(VarLayout layout, std::vector<Term> terms, const mpz_class& modulus = 0);
  /// Terms must already be strictly increasing and nonzero (reduced when a modulus is set).
  static LaurentPoly from_sorted_terms(VarLayout layout, std::vector<Term> terms,
                                       const mpz_class& modulus = 0);

  const VarLayout& layout() const { return layout_; }
  /// 0 means exact integer coefficients.
  const mpz_class& modulus() const { return modulus_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coeff(const Monomial& m) const;

  /// Coefficients reduced into [0, modulus); the modulus is remembered.
  LaurentPoly reduced(const mpz_class& modulus) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  LaurentPoly scaled(const mpz_class& c) const;
  LaurentPoly shifted(const Monomial& m) const;
  LaurentPoly power(std::uint64_t k) const;

  /// Coefficient of t^v as a polynomial in z (same layout, t exponents zero).
  LaurentPoly coeff_t(std::span<const std::int64_t> v) const;
  LaurentPoly coeff_t(std::int64_t v) const { return coeff_t(std::span<const std::int64_t>(&v, 1)); }
  /// Exponents of the selected block multiplied by p^k.
  LaurentPoly sigma_subst(std::uint64_t p, int k, SigmaScope scope) const;
  LaurentPoly derivative_z(int v) const;
  LaurentPoly derivative_t(int i) const;

  LatticePolytopeT newton_polytope_t() const;
  /// Lexicographically largest term. Throws ZeroPolynomial.
  const Term& leading_term() const;
  /// Common total degree over all variables, if every term has the same one.
  std::optional<std::int64_t> homogeneous_degree() const;
  /// Total z-degree of the first term, and whether all terms agree.
  std::optional<std::int64_t> z_degree_if_homogeneous() const;

  /// Evaluate at z = point (and t = t_point if r > 0 variables of t appear).
  UnramifiedElement evaluate(std::span<const UnramifiedElement> z_point,
                             std::span<const UnramifiedElement> t_point = {}) const;

  ValuationScan scan_valuation(std::uint64_t p, int cap, int claimed) const;

  std::string to_string() const;
  static LaurentPoly parse(const std::string& text, VarLayout layout);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void canonicalize();
  static mpz_class join_modulus(const LaurentPoly& a, const LaurentPoly& b);
  void check_layout(const LaurentPoly& o) const;

  VarLayout layout_;
  mpz_class modulus_ = 0;
  std::vector<Term> terms_;  // strictly increasing monomials, nonzero coefficients
};

inline LaurentPoly zero_like(const LaurentPoly& x) { return LaurentPoly(x.layout(), x.modulus()); }
inline LaurentPoly one_like(const LaurentPoly& x) { return LaurentPoly::constant(x.layout(), 1, x.modulus()); }

std::string monomial_to_string(const Monomial& m, VarLayout layout);

}  // namespace dkz
