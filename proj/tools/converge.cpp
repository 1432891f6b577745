#include <algorithm>
#include <iomanip>

#include "cli.hpp"

namespace dkz::cli {

namespace {

struct PointOutcome {
  Json doc;
  bool pass = false;
  int certified_B = 0, certified_I = 0, certified_d = 0;
  bool gaudin = true, connection = true;
};

Json sequence_json(const LimitApproximation& L) {
  Json inc = Json::array();
  for (const auto& v : L.increments) inc.push_back(valuation_json(v));
  Json j{{"target", L.target}, {"s_values", L.s_values},        {"increments", inc},
         {"certified_precision", L.certified_precision}, {"pass", L.pass}};
  if (!L.notes.empty()) j["notes"] = L.notes;
  return j;
}

PointOutcome run_point(const KZParams& P, const DomainPoint& d, int index, int s_max) {
  PointOutcome out;
  PointPipeline pp(P, d);
  const int M = d.a.at(0).ring().precision();
  Json coords = Json::array();
  for (const auto& x : d.a) coords.push_back(base_p_digits(x));
  Json seqs = Json::array();
  bool pass = true;
  auto take = [&](const LimitApproximation& L) {
    seqs.push_back(sequence_json(L));
    pass = pass && L.pass;
    return L.certified_precision;
  };
  out.certified_B = take(ratio_sequence(pp, s_max));
  out.certified_I = take(solution_bundle_sequence(pp, s_max));
  out.certified_d = s_max;
  for (int i = 0; i < P.n; ++i) {
    auto [LI, LA] = derivative_bundle_sequence(pp, i, s_max);
    out.certified_d = std::min({out.certified_d, take(LI), take(LA)});
  }
  Json reps = Json::array();
  for (int s = 1; s <= s_max && P.e * s <= M; ++s) {
    const CongruenceReport r = check_gaudin_relation(pp, s);
    out.gaudin = out.gaudin && r.pass;
    reps.push_back(report_json(r));
  }
  for (int s = 1; s < s_max; ++s)
    for (int u = 0; u < P.n; ++u)
      for (int v = u; v < P.n; ++v) {
        const CongruenceReport r = check_connection_identity(pp, s, u, v);
        out.connection = out.connection && r.pass;
        reps.push_back(report_json(r));
      }
  out.pass = pass && out.gaudin && out.connection;
  out.doc = Json{{"index", index},    {"coordinates", coords}, {"in_D_o", d.in_D_o},
                 {"sequences", seqs}, {"reports", reps},       {"pass", out.pass}};
  return out;
}

}  // namespace

int cmd_converge(const RunConfig& cfg) {
  const int s_max = cfg.s_max > 0 ? cfg.s_max : 3;
  const int count = cfg.count > 0 ? cfg.count : 10;
  if (s_max < 2) throw ConfigError("--s-max must be >= 2 to certify anything");
  const KZParams P = make_params(cfg.p, cfg.q, cfg.g, s_max);
  require_domain_degree(P, cfg.m);
  const int M = s_max + cfg.precision_guard;
  const UnramifiedRing R(ModulusContext(P.p, M), cfg.m);

  std::cerr << "[dkz] converge: searching " << count << " points of D^o over GF(" << P.p << "^" << cfg.m
            << "), precision p^" << M << '\n';
  const std::vector<DomainPoint> points = find_domain_points(P, R, count, cfg.seed, cfg.search_budget);

  std::vector<std::string> labels;
  std::vector<std::function<PointOutcome()>> jobs;
  for (std::size_t k = 0; k < points.size(); ++k) {
    labels.push_back("point " + std::to_string(k + 1));
    jobs.push_back([&P, &points, k, s_max] { return run_point(P, points[k], static_cast<int>(k) + 1, s_max); });
  }
  const std::vector<PointOutcome> results = run_pool(labels, jobs, cfg.workers);

  const RankResult rank = rank_check(P, points);
  const bool rank_applies = rank_hypothesis_holds(P, cfg.m);
  bool pass = true;
  Json pts = Json::array();
  for (const auto& r : results) {
    pass = pass && r.pass;
    pts.push_back(r.doc);
  }
  if (rank_applies) pass = pass && rank.report.pass;

  Json doc;
  doc["command"] = "converge";
  doc["params"] = Json{{"p", cfg.p},         {"q", cfg.q},         {"g", cfg.g},
                       {"m", cfg.m},         {"s_max", s_max},     {"seed", cfg.seed},
                       {"count", count},     {"precision", M}};
  doc["constants"] = Json{{"e", P.e}, {"n", P.n}, {"d_phi", P.d_phi()}, {"d_M", P.d_M()}};
  doc["points_found"] = points.size();
  doc["points"] = pts;
  doc["rank"] = report_json(rank.report);
  doc["rank_hypothesis"] = rank_applies;
  doc["pass"] = pass;
  write_output(cfg, doc);

  std::cout << std::left << std::setw(7) << "point" << std::setw(12) << "cert(B)" << std::setw(12) << "cert(I)"
            << std::setw(12) << "cert(dI,dA)" << std::setw(8) << "gaudin" << std::setw(12) << "connection"
            << "result\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    std::cout << std::setw(7) << k + 1 << std::setw(12) << r.certified_B << std::setw(12) << r.certified_I
              << std::setw(12) << r.certified_d << std::setw(8) << (r.gaudin ? "ok" : "FAIL") << std::setw(12)
              << (r.connection ? "ok" : "FAIL") << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  std::cout << "points found: " << points.size() << " of " << count << '\n';
  std::cout << "rank minor unit at " << std::count(rank.unit_at_point.begin(), rank.unit_at_point.end(), true)
            << " points" << (rank_applies ? "" : " (p^m <= d_phi + d_M, not required)") << '\n';
  std::cout << "converge: " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kPass : kFail;
}

}  // namespace dkz::cli
