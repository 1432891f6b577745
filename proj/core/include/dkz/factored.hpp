#pragma once

// Sums of products  c * core(t, z) * f_1(t, z_1) * ... * f_n(t, z_n).
// Powers of the master polynomial and the ghosts built from them stay in
// this form, so their coefficients can be scanned without ever expanding
// the full product. Per-variable factors require r = 1.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dkz/laurent.hpp"

namespace dkz {

/// Layout of a per-variable factor: t is variable 0, z_i is variable 1.
inline constexpr VarLayout kFactorLayout{1, 1};

class FactoredPoly {
 public:
  using FactorPtr = std::shared_ptr<const LaurentPoly>;

  struct Term {
    mpz_class coeff;
    std::optional<LaurentPoly> core;  // empty means 1
    std::vector<FactorPtr> factors;   // size n; null means 1
  };

  FactoredPoly() = default;
  explicit FactoredPoly(VarLayout layout);

  static FactoredPoly from_laurent(const LaurentPoly& f);
  /// coeff * prod_i factors[i](t, z_i), every factor in kFactorLayout.
  static FactoredPoly product(VarLayout layout, const std::vector<LaurentPoly>& factors,
                              const mpz_class& coeff = 1);
  /// Same factor at every position (shared, so symmetry is detected cheaply).
  static FactoredPoly symmetric_product(VarLayout layout, const LaurentPoly& factor, const mpz_class& coeff = 1);
  static FactoredPoly constant(VarLayout layout, const mpz_class& c);

  const VarLayout& layout() const { return layout_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_core() const;
  /// Every term has no core and the same factor at every position.
  bool is_symmetric() const;

  FactoredPoly& operator+=(const FactoredPoly& o);
  FactoredPoly& operator-=(const FactoredPoly& o);
  friend FactoredPoly operator+(FactoredPoly a, const FactoredPoly& b) { return a += b; }
  friend FactoredPoly operator-(FactoredPoly a, const FactoredPoly& b) { return a -= b; }
  friend FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b);
  FactoredPoly operator-() const;
  FactoredPoly scaled(const mpz_class& c) const;
  FactoredPoly power(std::uint64_t k) const;

  FactoredPoly sigma_subst(std::uint64_t p, int k, SigmaScope scope) const;
  FactoredPoly derivative_z(int v) const;
  FactoredPoly derivative_t() const;

  /// Coefficient of t^v as a z-polynomial in the full layout (exact).
  LaurentPoly coeff_t(std::int64_t v) const;
  /// Bounds on the t-exponents that can occur (r = 1).
  std::pair<std::int64_t, std::int64_t> t_bounds() const;
  /// Full expansion; throws InvalidArgument when the estimated size exceeds max_terms.
  LaurentPoly expand(std::size_t max_terms = 20'000'000) const;

  /// Min valuation over all coefficients, computed modulo p^M (M = ctx precision).
  ValuationScan scan_valuation(const ModulusContext& ctx, int claimed) const;
  /// First monomial with a nonzero coefficient whose t exponent lies outside [lo, hi] (exact).
  std::optional<Monomial> nonzero_outside_t(std::int64_t lo, std::int64_t hi) const;
  bool is_exact_zero() const;

 private:
  void normalize();
  void check_layout(const FactoredPoly& o) const;

  VarLayout layout_;
  std::vector<Term> terms_;
};

bool same_factor(const FactoredPoly::FactorPtr& a, const FactoredPoly::FactorPtr& b);

/// Embed a factor in kFactorLayout into the full layout as a polynomial in (t, z_i).
LaurentPoly embed_factor(const LaurentPoly& factor, VarLayout layout, int i);

}  // namespace dkz
