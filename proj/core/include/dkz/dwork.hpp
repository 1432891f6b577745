#pragma once

// Ghost polynomials, admissibility, Hasse-Witt matrices and the congruence
// checks built on them. Indices s, j, u, v are 0-based here; reports print them as given.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dkz/factored.hpp"
#include "dkz/laurent.hpp"
#include "dkz/matrix.hpp"
#include "dkz/report.hpp"
#include "dkz/upoly.hpp"

namespace dkz {

using LatticePoint = std::vector<std::int64_t>;
/// Sorted list of points of Z^r; matrix rows/columns follow this order.
using IndexSet = std::vector<LatticePoint>;

IndexSet interval_index_set(std::int64_t lo, std::int64_t hi);

struct DworkTuple {
  std::uint64_t p = 0;
  VarLayout layout;
  std::vector<int> e;                // e_1 .. e_L, L in {l, l+1}
  std::vector<IndexSet> delta;       // Delta_0 .. Delta_L
  std::vector<FactoredPoly> lambda;  // Lambda_0 .. Lambda_l

  int l() const { return static_cast<int>(lambda.size()) - 1; }
  int g() const { return static_cast<int>(delta.at(0).size()); }
  /// e_1 + ... + e_j (k(0) = 0).
  int k(int j) const;
  /// e_{i+1} + ... + e_j.
  int k(int i, int j) const { return k(j) - k(i); }
  /// Highest s for which level-s matrices (needing e_{s+1}, Delta_{s+1}) exist.
  int max_level() const { return std::min(l(), static_cast<int>(e.size()) - 1); }
  void validate() const;
};

class GhostSequence {
 public:
  explicit GhostSequence(DworkTuple tuple);

  const DworkTuple& tuple() const { return tuple_; }
  const FactoredPoly& V(int s) const { return v_.at(static_cast<std::size_t>(s)); }
  /// W_s^{(j)} = Lambda_j * Lambda_{j+1}^{p^{e_{j+1}}} * ... ; j = 0 gives W_s.
  const FactoredPoly& W(int s, int j = 0) const;
  /// W_s - V_s - sum_j V_{j-1} * sigma^{k_j}(W_s^{(j)}), which must vanish.
  FactoredPoly residual(int s) const;

 private:
  DworkTuple tuple_;
  std::vector<FactoredPoly> v_;
  std::map<std::pair<int, int>, FactoredPoly> w_;
};

GhostSequence ghosts(const DworkTuple& tuple);

struct HasseWittMatrix {
  int m = 0;
  IndexSet rows, cols;
  Matrix<LaurentPoly> entries;
};

/// Entry (u, v) = Coeff_{p^m v - u} F.
HasseWittMatrix hasse_witt(std::uint64_t p, int m, const IndexSet& rows, const IndexSet& cols, const LaurentPoly& F);
HasseWittMatrix hasse_witt(std::uint64_t p, int m, const IndexSet& rows, const IndexSet& cols, const FactoredPoly& F);

/// Admissibility of (N_0..N_L) for (Delta, e); r = 1 intervals or explicit point sets.
CongruenceReport check_admissible(std::uint64_t p, const std::vector<IndexSet>& delta, const std::vector<int>& e,
                                  const std::vector<LatticePolytopeT>& polytopes);

struct VerifyOptions {
  Mode mode = Mode::Symbolic;
  int points = 20;
  std::uint64_t seed = 1;
  int extension_degree = 1;
  int precision_guard = 2;
};

/// Which polynomial a Hasse-Witt matrix is taken of.
struct HwSource {
  enum Kind { W, V } kind = W;
  int s = 0;
  int j = 0;  // W_s^{(j)}; unused for V_s
};

/// A(m, Delta_row, Delta_col, X) with sigma^{sigma} applied to its z variables.
struct HwSpec {
  int m = 0;
  int row = 0;
  int col = 0;
  HwSource src;
  int sigma = 0;
};

class DworkVerifier {
 public:
  DworkVerifier(DworkTuple tuple, VerifyOptions opts = {});
  ~DworkVerifier();
  DworkVerifier(DworkVerifier&&) noexcept;

  const DworkTuple& tuple() const { return tuple_; }
  const VerifyOptions& options() const { return opts_; }
  /// Symbolic ghost sequence (built on first use).
  const GhostSequence& ghost_sequence();

  /// Every coefficient of V_s divisible by p^s.
  CongruenceReport ghost_divisibility(int s);
  /// t-support of V_s inside sum_i p^{k_i} N(Lambda_i); `declared` overrides N(Lambda_i).
  CongruenceReport newton_inclusion(int s, const std::vector<LatticePolytopeT>& declared = {});
  /// Exact identity of A(k_{s+1}, Delta_0, Delta_{s+1}, W_s) as a sum over ghost terms.
  CongruenceReport hw_factorization_identity(int s);
  /// A(W_s) = prod_j sigma^{k_j} A(e_{j+1}, Delta_j, Delta_{j+1}, Lambda_j) mod p.
  CongruenceReport mod_p_factorization(int s);
  /// Cross-multiplied ratio congruence modulo p^s.
  CongruenceReport ratio_congruence(int s);
  CongruenceReport det_congruence(int s);
  /// D_v(sigma^ell A(W_s)) A(W_s)^{-1} vs level s-1, modulo p^{s+ell}.
  CongruenceReport derivation_congruence(int s, int ell, int v);
  /// D_u D_v A(W_s) A(W_s)^{-1} vs level s-1, modulo p^s.
  CongruenceReport second_derivation_congruence(int s, int u, int v);

  /// Evaluation points used in evaluation mode at precision M (deterministic in the seed).
  std::vector<std::vector<UnramifiedElement>> sample_points(const UnramifiedRing& ring) const;

 private:
  CongruenceReport base_report(const std::string& name, int s) const;

  DworkTuple tuple_;
  VerifyOptions opts_;
  std::unique_ptr<GhostSequence> seq_;
};

// ---------------------------------------------------------------------------
// Backends shared by the checks. Exposed for the kz and padic-eval layers.

/// Symbolic Hasse-Witt matrices of ghost-sequence polynomials, reduced modulo p^M.
class SymbolicHw {
 public:
  SymbolicHw(const GhostSequence& seq, int precision);

  using Value = LaurentPoly;
  const Matrix<LaurentPoly>& exact(const HwSpec& spec);
  Matrix<LaurentPoly> hw(const HwSpec& spec);
  Matrix<LaurentPoly> hw_d(const HwSpec& spec, int v);
  Matrix<LaurentPoly> hw_dd(const HwSpec& spec, int u, int v);
  LaurentPoly one() const;
  mpz_class modulus() const { return modulus_; }

 private:
  const GhostSequence& seq_;
  int precision_;
  mpz_class modulus_;
  std::map<std::string, Matrix<LaurentPoly>> cache_;
};

/// Hasse-Witt matrices evaluated at a point (with jets for derivatives).
class EvalHw {
 public:
  EvalHw(const DworkTuple& tuple, std::vector<UnramifiedElement> point);

  using Value = UnramifiedElement;
  Matrix<UnramifiedElement> hw(const HwSpec& spec);
  Matrix<UnramifiedElement> hw_d(const HwSpec& spec, int v);
  Matrix<UnramifiedElement> hw_dd(const HwSpec& spec, int u, int v);
  /// Jet-valued matrix at sigma^spec.sigma of the jet point built from (v, u).
  Matrix<Jet> hw_jet(const HwSpec& spec, int v, int u);
  /// The source polynomial X(t, pt) for a jet point.
  const JetPoly& source(const HwSource& src, const JetPoint& pt);
  UnramifiedElement one() const { return point_.at(0).ring().one(); }

 private:
  const JetPoly& lambda_power(int i, int k, const JetPoint& pt);
  std::string key(const JetPoint& pt) const;

  const DworkTuple& tuple_;
  std::vector<UnramifiedElement> point_;
  std::map<std::string, JetPoly> cache_;
};

/// Min valuation over entries of a - b; witness names the first entry below `claimed`.
CongruenceReport compare_matrices(const Matrix<LaurentPoly>& a, const Matrix<LaurentPoly>& b, std::uint64_t p,
                                  int precision, int claimed);
CongruenceReport compare_matrices(const Matrix<UnramifiedElement>& a, const Matrix<UnramifiedElement>& b,
                                  int claimed);

/// Points with unit coordinates drawn uniformly mod p^M, deterministic in the seed.
std::vector<std::vector<UnramifiedElement>> random_unit_points(const UnramifiedRing& ring, int n, int count,
                                                               std::uint64_t seed);

/// Product of the matrices of the given sizes (identity if empty).
template <class T>
Matrix<T> matrix_product(const std::vector<Matrix<T>>& factors, std::size_t g, const T& one) {
  Matrix<T> acc = Matrix<T>::identity(g, one);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

}  // namespace dkz
