#pragma once

// Points of the KZ domain, the convergent matrix sequences at a point, and the
// relations their limits satisfy, all to finite p-adic precision.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkz/kz.hpp"

namespace dkz {

struct DomainPoint {
  std::vector<UnramifiedElement> a;
  bool in_D = false;    // det A(Phi_1)(a) is a unit
  bool in_D_o = false;  // in_D and all a_i - a_j are units
};

DomainPoint classify_point(const KZParams& P, std::vector<UnramifiedElement> a);

/// Throws InvalidParams unless p^m > d_phi.
void require_domain_degree(const KZParams& P, int m);
/// p^m > d_phi + d_M, the hypothesis of the rank statement.
bool rank_hypothesis_holds(const KZParams& P, int m);

/// Teichmuller tuples with distinct residues that lie in D^o; deterministic in the seed.
/// Throws SearchExhausted when no point is found within `budget` attempts.
std::vector<DomainPoint> find_domain_points(const KZParams& P, const UnramifiedRing& ring, int count,
                                            std::uint64_t seed, int budget = 0);

/// The KZ matrices at a and at frobenius^e(a), shared by every sequence at that point.
class PointPipeline {
 public:
  PointPipeline(const KZParams& P, const DomainPoint& pt);

  const KZParams& params() const { return P_; }
  const DomainPoint& domain_point() const { return pt_; }
  KzPoint& at() { return at_; }
  KzPoint& frob() { return frob_; }
  Matrix<UnramifiedElement> A_inv(int s);

 private:
  KZParams P_;
  DomainPoint pt_;
  KzPoint at_, frob_;
  std::map<int, Matrix<UnramifiedElement>> inv_;
};

struct LimitApproximation {
  std::string target;
  std::vector<int> s_values;
  std::vector<Matrix<UnramifiedElement>> matrices;
  /// v_p(X_{s+1} - X_s) for consecutive levels.
  std::vector<PadicValuation> increments;
  /// Largest s with v_p(X_{s'+1} - X_{s'}) >= s' for all s' <= s.
  int certified_precision = 0;
  bool pass = false;
  std::vector<std::string> notes;
};

/// B_s = A(Phi_s)(a) * A(Phi_{s-1})(frob^e a)^{-1} for s = 1..s_max; also checks det B_s is a unit.
LimitApproximation ratio_sequence(PointPipeline& pp, int s_max);
/// I_s(a) A(Phi_s)(a)^{-1}.
LimitApproximation solution_bundle_sequence(PointPipeline& pp, int s_max);
/// (dI_s/dz_i) A_s^{-1} and (dA_s/dz_i) A_s^{-1}.
std::pair<LimitApproximation, LimitApproximation> derivative_bundle_sequence(PointPipeline& pp, int i, int s_max);

/// (dI_s/dz_i) A_s^{-1} = H_i(a) I_s A_s^{-1} modulo p^{es} for every i.
CongruenceReport check_gaudin_relation(PointPipeline& pp, int s);
/// d/dz_u of (dA_s/dz_v) A_s^{-1} at level s (from jets) against
/// (d_u d_v A) A^{-1} - (d_v A A^{-1})(d_u A A^{-1}) at level s + 1, modulo p^s.
CongruenceReport check_connection_identity(PointPipeline& pp, int s, int u, int v);

struct RankResult {
  std::vector<bool> unit_at_point;
  CongruenceReport report;
};
/// Minor of I_1(a) A_1(a)^{-1} in rows q(g - l) + 1 is a unit at some point.
RankResult rank_check(const KZParams& P, const std::vector<DomainPoint>& points);

/// Base-p digits of each coordinate, least significant first, joined by ':'.
std::string base_p_digits(const UnramifiedElement& x);

}  // namespace dkz
