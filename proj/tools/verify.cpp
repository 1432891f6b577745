#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cli.hpp"

namespace dkz::cli {

namespace {

// Number of monomials of degree d in k variables, saturating.
double monomials(double d, int k) {
  if (d < 0) return 0;
  double c = 1;
  for (int i = 1; i < k; ++i) c = c * (d + i) / i;
  return c;
}

// z-degree of W_s for the KZ tuple.
double w_degree(const KZParams& P, int s) {
  double sum = 0, pk = 1;
  for (int j = 0; j <= s; ++j, pk *= std::pow(static_cast<double>(P.p), P.e)) sum += pk;
  return static_cast<double>(P.n) * static_cast<double>(P.N(1)) * sum;
}

// Rough count of the terms the symbolic path materializes for a suite.
double estimated_terms(const std::string& suite, const KZParams& P, int level) {
  const double n = P.n;
  if (suite == "ghosts") {
    // coefficients scanned per symmetric orbit
    const double per_var = w_degree(P, level) / n + 1;
    double fact = 1;
    for (int i = 2; i <= P.n; ++i) fact *= i;
    return std::pow(per_var, n) / fact;
  }
  if (suite == "hasse-witt" || suite == "derivation") {
    // largest Hasse-Witt entry of W_level at shift p^{e(level+1)}
    const double shift = std::pow(static_cast<double>(P.p), P.e * (level + 1)) - 1;
    const double entry = monomials(w_degree(P, level) - shift, P.n);
    return suite == "derivation" ? entry * entry : entry;
  }
  // largest solution entry, Coeff_{p^{es} - 1} of Phi_s / (t - z_i)
  auto solution_entry = [&](int s) {
    return monomials(n * static_cast<double>(P.N(s)) - static_cast<double>(P.pe(s)) + 1, P.n);
  };
  if (suite == "kz-solution") return solution_entry(level);
  if (suite == "solution-congruence") return solution_entry(level + 1);
  return 0;
}

std::vector<LatticePolytopeT> kz_polytopes(const KZParams& P, int levels) {
  const auto top = static_cast<std::int64_t>(P.n) * static_cast<std::int64_t>(P.N(1));
  return std::vector<LatticePolytopeT>(static_cast<std::size_t>(levels), LatticePolytopeT::interval(0, top));
}

std::string tag(const std::string& name, int s) { return name + " s=" + std::to_string(s); }

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  const int level = cfg.s_max > 0 ? cfg.s_max : 2;
  const int count = cfg.count > 0 ? cfg.count : 20;
  const bool needs_next = cfg.suite == "solution-congruence";
  const KZParams P = make_params(cfg.p, cfg.q, cfg.g, needs_next ? level + 1 : level);

  const double estimate = estimated_terms(cfg.suite, P, level);
  Mode mode = Mode::Symbolic;
  if (cfg.mode == "evaluation") mode = Mode::Evaluation;
  else if (cfg.mode == "auto") mode = estimate < 1e7 ? Mode::Symbolic : Mode::Evaluation;

  VerifyOptions vo;
  vo.mode = mode;
  vo.points = count;
  vo.seed = cfg.seed;
  vo.extension_degree = cfg.m;
  vo.precision_guard = cfg.precision_guard;
  KzCheckOptions ko;
  ko.mode = mode;
  ko.points = count;
  ko.seed = cfg.seed;
  ko.extension_degree = cfg.m;
  ko.precision_guard = cfg.precision_guard;

  std::vector<std::string> labels;
  std::vector<std::function<std::vector<CongruenceReport>()>> jobs;
  auto add = [&](std::string label, std::function<std::vector<CongruenceReport>()> fn) {
    labels.push_back(std::move(label));
    jobs.push_back(std::move(fn));
  };
  // Each job builds its own verifier: the ghost sequence is cheap and verifiers are not shared across threads.
  auto dwork = [&](auto body) {
    return [P, level, vo, body] {
      DworkVerifier ver(kz_tuple(P, level), vo);
      return std::vector<CongruenceReport>{body(ver)};
    };
  };
  const int max_level = kz_tuple(P, level).max_level();

  if (cfg.suite == "ghosts") {
    for (int s = 0; s <= level; ++s) {
      add(tag("ghost_divisibility", s), dwork([s](DworkVerifier& v) { return v.ghost_divisibility(s); }));
      add(tag("newton_inclusion", s), dwork([s](DworkVerifier& v) { return v.newton_inclusion(s); }));
    }
  } else if (cfg.suite == "admissible") {
    // DKZ_MUTANT=widen enlarges the first polytope by p^{e}, which must be rejected.
    const char* mutant = std::getenv("DKZ_MUTANT");
    const bool widen = mutant && std::string(mutant) == "widen";
    add("admissible", [P, level, widen] {
      const int L = level + 1;
      std::vector<IndexSet> delta(static_cast<std::size_t>(L + 1), interval_index_set(1, P.g));
      std::vector<int> e(static_cast<std::size_t>(L), P.e);
      auto polys = kz_polytopes(P, L);
      if (widen) polys[0] = LatticePolytopeT::interval(0, polys[0].hi.at(0) + static_cast<std::int64_t>(P.pe(1)));
      CongruenceReport r = check_admissible(P.p, delta, e, polys);
      if (widen) r.note("mutant", "first polytope widened by p^e");
      return std::vector<CongruenceReport>{r};
    });
  } else if (cfg.suite == "hasse-witt") {
    for (int s = 0; s <= max_level; ++s) {
      add(tag("hw_factorization_identity", s),
          dwork([s](DworkVerifier& v) { return v.hw_factorization_identity(s); }));
      add(tag("mod_p_factorization", s), dwork([s](DworkVerifier& v) { return v.mod_p_factorization(s); }));
    }
    for (int s = 1; s <= max_level; ++s) {
      add(tag("ratio_congruence", s), dwork([s](DworkVerifier& v) { return v.ratio_congruence(s); }));
      add(tag("det_congruence", s), dwork([s](DworkVerifier& v) { return v.det_congruence(s); }));
    }
    add("det_phi1", [P] { return std::vector<CongruenceReport>{det_phi1_check(P)}; });
    add("leading_terms", [P] { return std::vector<CongruenceReport>{check_leading_terms(P)}; });
    add("minor", [P] { return std::vector<CongruenceReport>{check_minor(P)}; });
  } else if (cfg.suite == "kz-solution") {
    add("kz_identities s=1", [P] { return std::vector<CongruenceReport>{check_kz_identities(P, 1)}; });
    for (int s = 1; s <= level; ++s) {
      add(tag("kz_solution", s), [P, s, ko] { return std::vector<CongruenceReport>{check_kz_solution(P, s, ko)}; });
      add(tag("gradient_identity", s),
          [P, s, ko] { return std::vector<CongruenceReport>{check_gradient_identity(P, s, ko)}; });
    }
  } else if (cfg.suite == "solution-congruence") {
    for (int s = 1; s <= level; ++s) {
      add(tag("solution_congruences", s), [P, s, ko] { return check_solution_congruences(P, s, ko); });
      if (s >= 2)
        add(tag("mod_p_stability", s),
            [P, s, ko] { return std::vector<CongruenceReport>{check_mod_p_stability(P, s, ko)}; });
    }
  } else if (cfg.suite == "derivation") {
    for (int s = 1; s <= max_level; ++s) {
      for (int ell = 0; ell <= 1; ++ell)
        for (int v = 0; v < P.n; ++v)
          add(tag("derivation", s) + " l=" + std::to_string(ell) + " v=" + std::to_string(v + 1),
              dwork([s, ell, v](DworkVerifier& ver) { return ver.derivation_congruence(s, ell, v); }));
      for (int u = 0; u < P.n; ++u)
        for (int v = u; v < P.n; ++v)
          add(tag("second_derivation", s) + " u=" + std::to_string(u + 1) + " v=" + std::to_string(v + 1),
              dwork([s, u, v](DworkVerifier& ver) { return ver.second_derivation_congruence(s, u, v); }));
    }
  }

  std::cerr << "[dkz] verify " << cfg.suite << ": " << jobs.size() << " jobs, mode " << to_string(mode) << ", "
            << cfg.workers << " workers\n";
  std::vector<CongruenceReport> reports;
  for (auto& batch : run_pool(labels, jobs, cfg.workers))
    for (auto& r : batch) reports.push_back(std::move(r));

  bool pass = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    arr.push_back(report_json(r));
  }
  Json doc;
  doc["command"] = "verify";
  doc["suite"] = cfg.suite;
  doc["params"] = Json{{"p", cfg.p},       {"q", cfg.q},         {"g", cfg.g},
                       {"m", cfg.m},       {"s_max", level},     {"seed", cfg.seed},
                       {"count", count},   {"precision_guard", cfg.precision_guard}};
  doc["mode_requested"] = cfg.mode;
  doc["mode"] = to_string(mode);
  doc["estimated_terms"] = static_cast<std::uint64_t>(std::min(estimate, 1e18));
  doc["reports"] = arr;
  doc["pass"] = pass;
  write_output(cfg, doc);

  print_table(reports);
  std::cout << "suite " << cfg.suite << ": " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kPass : kFail;
}

}  // namespace dkz::cli
