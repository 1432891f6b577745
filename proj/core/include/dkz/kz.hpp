#pragma once

// KZ specialization: parameters, master polynomials, hypergeometric
// solutions mod p^{es}, Hasse-Witt matrices of Phi_s, and the checks on them.
// Variable and component indices are 0-based in the API, 1-based in reports.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "dkz/dwork.hpp"

namespace dkz {

struct KZParams {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  int g = 0;
  int e = 0;
  int n = 0;
  int s_max = 3;

  /// (p^{es} - 1) / q
  std::uint64_t N(int s) const;
  /// p^{es}
  std::uint64_t pe(int s) const;
  /// N(1) * (q g^2 + 2g - q g) / 2
  std::int64_t d_phi() const;
  std::int64_t d_M() const;
  VarLayout layout() const { return {1, n}; }
};

/// Validates p > q primes, p^e > n, p >= n + q - 2 (InvalidParams names the failing one).
KZParams make_params(std::uint64_t p, std::uint64_t q, int g, int s_max = 3);

struct MasterPolynomial {
  int s = 0;
  FactoredPoly factored;
  LaurentPoly expanded() const { return factored.expand(); }
};

MasterPolynomial master_polynomial(const KZParams& P, int s);

/// Phi_s / (t - z_i), kept factored.
FactoredPoly master_over_linear(const KZParams& P, int s, int i);

struct SolutionMatrix {
  int s = 0;
  Matrix<LaurentPoly> I;  // n x g, column l-1 is I_{s,l}
};

SolutionMatrix hypergeometric_solutions(const KZParams& P, int s);

struct GaudinData {
  int n = 0;
  /// Entry (a, b) of Omega_{ij}.
  static int omega(int i, int j, int a, int b);
  /// Component k of Omega_{ij} v.
  template <class T>
  static T apply(int i, int j, const std::vector<T>& v, int k) {
    if (k == i) return v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(i)];
    if (k == j) return v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)];
    return zero_like(v[0]);
  }
};

/// The tuple Lambda_i = Phi_1, e_i = e, Delta_i = {1..g} with l + 1 ghosts and one spare level.
DworkTuple kz_tuple(const KZParams& P, int l);

HasseWittMatrix hasse_witt_phi(const KZParams& P, int s);

struct KzCheckOptions {
  Mode mode = Mode::Symbolic;
  int points = 20;
  std::uint64_t seed = 1;
  int extension_degree = 1;
  int precision_guard = 2;
};

// ---------------------------------------------------------------------------
// Backends: the KZ matrices either as polynomials mod p^M or as values at a point.

class KzSymbolic {
 public:
  using Value = LaurentPoly;
  /// precision 0 keeps exact integer coefficients.
  KzSymbolic(const KZParams& P, int precision);

  Matrix<LaurentPoly> A(int s);
  Matrix<LaurentPoly> A_d(int s, int v);
  Matrix<LaurentPoly> A_dd(int s, int u, int v);
  Matrix<LaurentPoly> I(int s);
  Matrix<LaurentPoly> I_d(int s, int j);
  LaurentPoly z(int i) const;
  LaurentPoly one() const;
  LaurentPoly constant(std::int64_t c) const;

 private:
  LaurentPoly red(const LaurentPoly& f) const { return modulus_ == 0 ? f : f.reduced(modulus_); }
  const Matrix<LaurentPoly>& A_exact(int s);
  const Matrix<LaurentPoly>& I_exact(int s);

  KZParams P_;
  mpz_class modulus_;
  std::map<int, Matrix<LaurentPoly>> a_, i_;
};

/// Values at a point a of (ring)^n. Derivatives come from exact division of
/// Phi_s(t, a) by linear factors, since d/dz_j Phi_s = -N Phi_s / (t - z_j).
class KzPoint {
 public:
  using Value = UnramifiedElement;
  KzPoint(const KZParams& P, std::vector<UnramifiedElement> a);

  const std::vector<UnramifiedElement>& point() const { return a_; }
  Matrix<UnramifiedElement> A(int s);
  Matrix<UnramifiedElement> A_d(int s, int v);
  Matrix<UnramifiedElement> A_dd(int s, int u, int v);
  Matrix<UnramifiedElement> I(int s);
  Matrix<UnramifiedElement> I_d(int s, int j);
  UnramifiedElement z(int i) const { return a_.at(static_cast<std::size_t>(i)); }
  UnramifiedElement one() const { return a_.at(0).ring().one(); }
  UnramifiedElement constant(std::int64_t c) const { return a_.at(0).ring().from_int(c); }

  /// Phi_s(t, a), and Phi_s divided by (t - a_i), (t - a_i)(t - a_j).
  const UPoly& phi(int s);
  const UPoly& phi_over(int s, int i);
  const UPoly& phi_over2(int s, int i, int j);

 private:
  Matrix<UnramifiedElement> hw_of(int s, const UPoly& f, const UnramifiedElement& scale) const;

  KZParams P_;
  std::vector<UnramifiedElement> a_;
  std::map<int, UPoly> phi_;
  std::map<std::tuple<int, int, int>, UPoly> div_;
};

// ---------------------------------------------------------------------------
// Checks

/// Cleared KZ equations and column sums modulo p^{es}.
CongruenceReport check_kz_solution(const KZParams& P, int s, const KzCheckOptions& opts = {});

/// Exact identities behind the solutions: N sum_i Phi_s/(t - z_i) = dPhi_s/dt and the
/// cleared Psi identity for every i.
CongruenceReport check_kz_identities(const KZParams& P, int s);

struct LeadingTermData {
  int ell = 0;
  mpz_class binomial;
  /// C_l scaled by l so every entry is an integer: l * binom * (0..0, 1, N/l, ...).
  std::vector<mpz_class> scaled_vector;
  Monomial monomial;
};

std::vector<LeadingTermData> leading_term_solutions(const KZParams& P);
/// Compares predicted leading terms of I_{1,l} with the computed ones (global sign per l).
CongruenceReport check_leading_terms(const KZParams& P);

struct MinorData {
  LaurentPoly minor;
  std::optional<std::int64_t> degree;
};
MinorData minor_M(const KZParams& P);
/// Homogeneity, degree d_M, leading term versus the binomial product, nonzero mod p.
CongruenceReport check_minor(const KZParams& P);
/// det A(Phi_1): homogeneity, degree d_phi, leading term, nonzero mod p; also entrywise
/// leading terms of A(Phi_1) with the g = 2 display variants recorded.
CongruenceReport det_phi1_check(const KZParams& P);

/// I_{s+1} A_{s+1}^{-1} = I_s A_s^{-1} mod p^s and the d/dz_j variants, cross-multiplied.
std::vector<CongruenceReport> check_solution_congruences(const KZParams& P, int s, const KzCheckOptions& opts = {});
/// grad A(s, z) = ((1 - p^{es}) / q) I_s with A(s, z)_l = Coeff_{l p^{es} - 1} Phi_s. Exact when
/// symbolic; at points the gradient comes from jets, independently of the division path.
CongruenceReport check_gradient_identity(const KZParams& P, int s, const KzCheckOptions& opts = {});
/// I_s A_s^{-1} = I_1 A_1^{-1} mod p.
CongruenceReport check_mod_p_stability(const KZParams& P, int s, const KzCheckOptions& opts = {});

/// Constants and degree tables as JSON text.
std::string describe_json(const KZParams& P);

}  // namespace dkz
