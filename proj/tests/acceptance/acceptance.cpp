// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any line fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dkz/padic_eval.hpp"

using namespace dkz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void require(const CongruenceReport& r, const std::string& what) {
    require(r.pass, what + (r.witness ? " (" + *r.witness + ")" : ""));
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) out.require(secs < limit_s, "over time limit " + std::to_string(limit_s) + " s");
  if (!out.pass) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", secs);
  std::cout << id << ' ' << (out.pass ? "PASS" : "FAIL") << "  " << title << " [" << buf << " s]"
            << (out.detail.empty() ? "" : "  -- " + out.detail) << std::endl;
}

VerifyOptions eval_opts(int points, std::uint64_t seed) {
  VerifyOptions o;
  o.mode = Mode::Evaluation;
  o.points = points;
  o.seed = seed;
  return o;
}

std::vector<LatticePolytopeT> intervals(int count, std::int64_t hi) {
  return std::vector<LatticePolytopeT>(static_cast<std::size_t>(count), LatticePolytopeT::interval(0, hi));
}

#ifdef DKZ_CLI
int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + DKZ_CLI + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
#endif

}  // namespace

int main() {
  const KZParams P7 = make_params(7, 3, 1);
  const KZParams P13 = make_params(13, 3, 2);

  criterion("C1", "ghost divisibility, Lambda = (Phi_1, Phi_1, Phi_1), (7,3,1), l = 2, symbolic", 30, [&](Outcome& o) {
    DworkVerifier ver(kz_tuple(P7, 2));
    for (int s = 1; s <= 2; ++s) {
      const auto r = ver.ghost_divisibility(s);
      o.require(r, "V_" + std::to_string(s));
      o.require(r.claimed_exponent == s && r.mode == Mode::Symbolic, "claim p^s, symbolic");
      o.require(ver.ghost_sequence().residual(s).is_exact_zero(), "ghost recursion residual");
    }
  });

  criterion("C2", "admissibility: KZ intervals, p = 5 example, widened mutants", 0, [&](Outcome& o) {
    const std::vector<IndexSet> d7(4, interval_index_set(1, 1));
    o.require(check_admissible(7, d7, {1, 1, 1}, intervals(3, 8)), "(7,3,1) [0,8]");
    const std::vector<IndexSet> d13(4, interval_index_set(1, 2));
    o.require(check_admissible(13, d13, {1, 1, 1}, intervals(3, 28)), "(13,3,2) [0,28]");
    const std::vector<IndexSet> d5(4, interval_index_set(1, 4));
    o.require(check_admissible(5, d5, {2, 2, 2}, intervals(3, 104)), "p = 5, [0,104]");
    auto m7 = intervals(3, 8);
    m7[0] = LatticePolytopeT::interval(0, 8 + 7);
    const auto bad7 = check_admissible(7, d7, {1, 1, 1}, m7);
    o.require(!bad7.pass && bad7.witness.has_value(), "(7,3,1) mutant rejected with witness");
    auto m5 = intervals(3, 104);
    m5[0] = LatticePolytopeT::interval(0, 104 + 25);
    const auto bad5 = check_admissible(5, d5, {2, 2, 2}, m5);
    o.require(!bad5.pass && bad5.witness.has_value(), "p = 5 mutant rejected with witness");
  });

  criterion("C3", "mod p factorization: (7,3,1) symbolic s <= 2, (13,3,2) s = 2 at 20 points", 0, [&](Outcome& o) {
    DworkVerifier sym(kz_tuple(P7, 2));
    for (int s = 0; s <= 2; ++s) o.require(sym.mod_p_factorization(s), "(7,3,1) s=" + std::to_string(s));
    DworkVerifier ev(kz_tuple(P13, 2), eval_opts(20, 3));
    const auto r = ev.mod_p_factorization(2);
    o.require(r, "(13,3,2) s=2");
    o.require(r.claimed_exponent == 1, "claim is mod p");
  });

  criterion("C4", "ratio congruence: (7,3,1) s = 2 symbolic, (13,3,2) s = 2,3 evaluation", 0, [&](Outcome& o) {
    DworkVerifier sym(kz_tuple(P7, 2));
    const auto r = sym.ratio_congruence(2);
    o.require(r, "(7,3,1) s=2");
    o.require(r.claimed_exponent == 2, "claim p^2");
    o.require(sym.det_congruence(2), "(7,3,1) det s=2");
    DworkVerifier ev(kz_tuple(P13, 3), eval_opts(20, 4));
    for (int s = 2; s <= 3; ++s) {
      const auto e = ev.ratio_congruence(s);
      o.require(e, "(13,3,2) s=" + std::to_string(s));
      o.require(e.claimed_exponent == s, "claim p^s");
      o.require(ev.det_congruence(s), "(13,3,2) det s=" + std::to_string(s));
    }
  });

  criterion("C5", "derivation congruences, (7,3,1), s = 1,2, all indices, 20 points", 0, [&](Outcome& o) {
    DworkVerifier ev(kz_tuple(P7, 2), eval_opts(20, 5));
    for (int s = 1; s <= 2; ++s)
      for (int u = 0; u < P7.n; ++u) {
        for (int ell = 0; ell <= 1; ++ell) {
          const auto r = ev.derivation_congruence(s, ell, u);
          o.require(r, "Der s=" + std::to_string(s) + " l=" + std::to_string(ell) + " v=" + std::to_string(u + 1));
          o.require(r.claimed_exponent == s + ell, "Der claim p^{s+l}");
        }
        for (int v = 0; v < P7.n; ++v) {
          const auto r = ev.second_derivation_congruence(s, u, v);
          o.require(r, "Der2 s=" + std::to_string(s) + " u=" + std::to_string(u + 1) + " v=" + std::to_string(v + 1));
          o.require(r.claimed_exponent == s, "Der2 claim p^s");
        }
      }
  });

  criterion("C6", "KZ solutions mod p^{es}: (7,3,1) s = 1,2 and (13,3,2) s = 1, symbolic", 0, [&](Outcome& o) {
    for (int s = 1; s <= 2; ++s) {
      const auto r = check_kz_solution(P7, s);
      o.require(r, "(7,3,1) s=" + std::to_string(s));
      o.require(r.claimed_exponent == P7.e * s && r.mode == Mode::Symbolic, "claim p^{es}, symbolic");
    }
    o.require(check_kz_solution(P13, 1), "(13,3,2) s=1");
    o.require(check_kz_identities(P7, 1), "(7,3,1) identities");
    o.require(check_kz_identities(P13, 1), "(13,3,2) identities");
  });

  criterion("C7", "leading terms, binomial units, deg M = d_M, deg det A(Phi_1) = d_phi", 0, [&](Outcome& o) {
    o.require(P7.d_phi() == 2 && P7.d_M() == 1, "(7,3,1) d_phi = 2, d_M = 1");
    o.require(P13.d_phi() == 20 && P13.d_M() == 17, "(13,3,2) d_phi = 20, d_M = 17");
    for (const KZParams* P : {&P7, &P13}) {
      const std::string tag = "(" + std::to_string(P->p) + ",3," + std::to_string(P->g) + ") ";
      o.require(check_leading_terms(*P), tag + "leading terms");
      o.require(check_minor(*P), tag + "minor");
      o.require(det_phi1_check(*P), tag + "det A(Phi_1)");
      const auto md = minor_M(*P);
      o.require(md.degree && *md.degree == P->d_M(), tag + "deg M");
      for (const auto& lt : leading_term_solutions(*P))
        o.require(mpz_divisible_ui_p(lt.binomial.get_mpz_t(), P->p) == 0, tag + "binomial unit");
    }
  });

  criterion("C8", "solution congruences s = 1,2: (7,3,1) symbolic, (13,3,2) evaluation; mod p stability", 0,
            [&](Outcome& o) {
              KzCheckOptions ev;
              ev.mode = Mode::Evaluation;
              ev.points = 20;
              ev.seed = 8;
              for (int s = 1; s <= 2; ++s) {
                for (const auto& r : check_solution_congruences(P7, s))
                  o.require(r, "(7,3,1) " + r.check + " s=" + std::to_string(s));
                for (const auto& r : check_solution_congruences(P13, s, ev))
                  o.require(r, "(13,3,2) " + r.check + " s=" + std::to_string(s));
              }
              o.require(check_mod_p_stability(P7, 2), "(7,3,1) stability s=2");
              o.require(check_mod_p_stability(P13, 2, ev), "(13,3,2) stability s=2");
            });

  struct Certified {
    KZParams P;
    std::unique_ptr<UnramifiedRing> ring;
    std::vector<DomainPoint> points;
  };
  std::vector<Certified> certified;
  certified.push_back({P7, std::make_unique<UnramifiedRing>(ModulusContext(7, 6), 1), {}});
  certified.push_back({P13, std::make_unique<UnramifiedRing>(ModulusContext(13, 6), 2), {}});

  criterion("C9", "convergence at 10 points per set, s = 1..3 at precision 6, det B_s units", 600, [&](Outcome& o) {
    for (auto& c : certified) {
      const std::string tag = "(" + std::to_string(c.P.p) + ",3," + std::to_string(c.P.g) + ") ";
      c.points = find_domain_points(c.P, *c.ring, 10, 2024);
      o.require(c.points.size() >= 10, tag + "10 points found");
      for (std::size_t k = 0; k < c.points.size(); ++k) {
        PointPipeline pp(c.P, c.points[k]);
        const auto B = ratio_sequence(pp, 4);
        const auto I = solution_bundle_sequence(pp, 4);
        o.require(B.pass && B.certified_precision >= 3, tag + "B at point " + std::to_string(k + 1));
        o.require(I.pass && I.certified_precision >= 3, tag + "I at point " + std::to_string(k + 1));
        for (int i = 0; i < c.P.n; ++i) {
          const auto [LI, LA] = derivative_bundle_sequence(pp, i, 4);
          o.require(LI.pass && LA.pass, tag + "derivative bundles i=" + std::to_string(i + 1));
        }
      }
    }
  });

  criterion("C10", "Gaudin relation mod p^{es}, s = 1,2, every i, every certified point", 0, [&](Outcome& o) {
    for (auto& c : certified) {
      o.require(!c.points.empty(), "points from C9");
      for (const auto& pt : c.points) {
        PointPipeline pp(c.P, pt);
        for (int s = 1; s <= 2; ++s) o.require(check_gaudin_relation(pp, s), "s=" + std::to_string(s));
      }
    }
  });

  criterion("C11", "rank g: designated minor of I_1 A_1^{-1} is a unit at some point", 0, [&](Outcome& o) {
    for (auto& c : certified) {
      const int m = c.ring->degree();
      o.require(rank_hypothesis_holds(c.P, m), "p^m > d_phi + d_M");
      o.require(rank_check(c.P, c.points).report, "rank at p=" + std::to_string(c.P.p));
    }
  });

  criterion("C12", "determinism of reports and the CLI exit-code contract", 0, [&](Outcome& o) {
    KzCheckOptions ev;
    ev.mode = Mode::Evaluation;
    ev.points = 5;
    ev.seed = 77;
    o.require(check_kz_solution(P7, 2, ev).to_json() == check_kz_solution(P7, 2, ev).to_json(), "kz report stable");
    DworkVerifier a(kz_tuple(P7, 2), eval_opts(5, 9)), b(kz_tuple(P7, 2), eval_opts(5, 9));
    o.require(a.derivation_congruence(2, 1, 0).to_json() == b.derivation_congruence(2, 1, 0).to_json(),
              "dwork report stable");
#ifdef DKZ_CLI
    o.require(run_cli("verify ghosts --p 7 --q 3 --g 1 --l 2") == 0, "ghosts exit 0");
    o.require(run_cli("verify kz-solution --p 7 --q 3 --g 1 --s 2") == 0, "kz-solution exit 0");
    o.require(run_cli("verify ghosts --p 4 --q 3 --g 1") == 2, "p = 4 exit 2");
    o.require(run_cli("verify admissible --p 7 --q 3 --g 1", "DKZ_MUTANT=widen") == 1, "mutant exit 1");
    o.require(run_cli("converge --p 13 --q 3 --g 2 --m 1") == 2, "insufficient m exit 2");
    o.require(run_cli("converge --p 7 --q 3 --g 1 --count 1 --seed 4", "DKZ_SEARCH_BUDGET=1") == 3, "no point exit 3");
    const std::string base = "converge --p 7 --q 3 --g 1 --m 1 --s-max 3 --seed 31 --out ";
    o.require(run_cli(base + "acceptance_run1.json", "DKZ_WORKERS=1") == 0, "converge exit 0");
    o.require(run_cli(base + "acceptance_run2.json", "DKZ_WORKERS=2") == 0, "converge exit 0");
    o.require(slurp("acceptance_run1.json") == slurp("acceptance_run2.json") && !slurp("acceptance_run1.json").empty(),
              "byte-identical converge reports");
#else
    o.require(false, "CLI not built");
#endif
  });

  return failures == 0 ? 0 : 1;
}
