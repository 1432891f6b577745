#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace dkz::cli {

Json valuation_json(const PadicValuation& v) { return Json{{"value", v.value}, {"saturated", v.saturated}}; }

Json report_json(const CongruenceReport& r) { return Json::parse(r.to_json()); }

void write_output(const RunConfig& cfg, const Json& doc) {
  if (cfg.out.empty()) return;
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + cfg.out);
  f << doc.dump(2) << '\n';
}

void print_table(const std::vector<CongruenceReport>& reports) {
  std::cout << std::left << std::setw(30) << "check" << std::setw(22) << "params" << std::setw(12) << "mode"
            << std::setw(9) << "claimed" << std::setw(10) << "measured" << "result\n";
  for (const auto& r : reports) {
    std::string ps;
    for (const auto& [k, v] : r.params) {
      if (k == "p" || k == "q" || k == "g") continue;
      if (!ps.empty()) ps += ' ';
      ps += k + "=" + std::to_string(v);
    }
    std::string measured = "-";
    if (r.measured_valuation)
      measured = (r.measured_valuation->saturated ? ">=" : "") + std::to_string(r.measured_valuation->value);
    std::cout << std::setw(30) << r.check << std::setw(22) << ps << std::setw(12) << to_string(r.mode) << std::setw(9)
              << (r.claimed_exponent ? std::to_string(*r.claimed_exponent) : "-") << std::setw(10) << measured
              << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

namespace {

struct Flags {
  CLI::App* sub = nullptr;
  std::string config;
};

void add_flags(CLI::App* sub, RunConfig& cfg, Flags& fl) {
  fl.sub = sub;
  sub->add_option("--p", cfg.p, "prime p");
  sub->add_option("--q", cfg.q, "prime q < p");
  sub->add_option("--g", cfg.g, "number of solution columns");
  sub->add_option("--m", cfg.m, "residue field degree for evaluation points");
  sub->add_option("--s-max,--l,--s", cfg.s_max, "highest level");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--mode", cfg.mode, "symbolic | evaluation | auto")
      ->check(CLI::IsMember({"symbolic", "evaluation", "auto"}));
  sub->add_option("--count", cfg.count, "evaluation points or domain points");
  sub->add_option("--out", cfg.out, "JSON report path");
  sub->add_option("--precision-guard", cfg.precision_guard, "extra p-adic digits");
  sub->add_option("--config", fl.config, "JSON file with the same keys as the flags");
}

template <class T>
void take(const Json& j, const Flags& fl, const char* key, const char* flag, T& dst) {
  if (!j.contains(key) || fl.sub->get_option(flag)->count() > 0) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void merge_config(const Flags& fl, RunConfig& cfg) {
  if (fl.config.empty()) return;
  std::ifstream f(fl.config);
  if (!f) throw ConfigError("cannot read config file " + fl.config);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::set<std::string> known = {"p", "q", "g", "m", "s-max", "seed", "mode", "count", "out",
                                               "precision-guard"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
  take(j, fl, "p", "--p", cfg.p);
  take(j, fl, "q", "--q", cfg.q);
  take(j, fl, "g", "--g", cfg.g);
  take(j, fl, "m", "--m", cfg.m);
  take(j, fl, "s-max", "--s-max", cfg.s_max);
  take(j, fl, "seed", "--seed", cfg.seed);
  take(j, fl, "mode", "--mode", cfg.mode);
  take(j, fl, "count", "--count", cfg.count);
  take(j, fl, "out", "--out", cfg.out);
  take(j, fl, "precision-guard", "--precision-guard", cfg.precision_guard);
  if (cfg.mode != "symbolic" && cfg.mode != "evaluation" && cfg.mode != "auto")
    throw ConfigError("mode must be symbolic, evaluation or auto");
}

void validate(RunConfig& cfg) {
  if (cfg.p == 0) throw ConfigError("--p is required");
  if (cfg.q == 0) throw ConfigError("--q is required");
  if (cfg.g == 0) throw ConfigError("--g is required");
  if (cfg.s_max < 0) throw ConfigError("--s-max must be positive");
  if (cfg.count < 0) throw ConfigError("--count must be positive");
  if (cfg.precision_guard < 0) throw ConfigError("--precision-guard must be >= 0");
  if (cfg.m < 1) throw ConfigError("--m must be >= 1");
  cfg.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* w = std::getenv("DKZ_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(w, &end, 10);
    if (end == w || *end != '\0' || v < 1 || v > 1024) throw ConfigError("DKZ_WORKERS must be an integer in [1, 1024]");
    cfg.workers = static_cast<int>(v);
  }
  if (const char* b = std::getenv("DKZ_SEARCH_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(b, &end, 10);
    if (end == b || *end != '\0' || v < 1 || v > 100000000) throw ConfigError("DKZ_SEARCH_BUDGET must be a positive integer");
    cfg.search_budget = static_cast<int>(v);
  }
}

int cmd_describe(const RunConfig& cfg) {
  const KZParams P = make_params(cfg.p, cfg.q, cfg.g);
  const Json doc = Json::parse(describe_json(P));
  std::cout << doc.dump(2) << '\n';
  write_output(cfg, doc);
  return kPass;
}

}  // namespace
}  // namespace dkz::cli

int main(int argc, char** argv) {
  using namespace dkz::cli;
  CLI::App app{"Dwork congruences and p-adic KZ solutions: verification harness"};
  app.require_subcommand(1);
  RunConfig cfg;
  Flags fv, fc, fd;
  auto* verify = app.add_subcommand("verify", "run a check suite");
  verify->add_option("suite", cfg.suite, "check suite")
      ->required()
      ->check(CLI::IsMember({"ghosts", "admissible", "hasse-witt", "kz-solution", "solution-congruence", "derivation"}));
  add_flags(verify, cfg, fv);
  auto* converge = app.add_subcommand("converge", "search domain points and certify the limit sequences");
  add_flags(converge, cfg, fc);
  auto* describe = app.add_subcommand("describe", "print the constants of a KZ instance");
  add_flags(describe, cfg, fd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    const Flags& fl = verify->parsed() ? fv : converge->parsed() ? fc : fd;
    cfg.command = verify->parsed() ? "verify" : converge->parsed() ? "converge" : "describe";
    merge_config(fl, cfg);
    validate(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "converge") return cmd_converge(cfg);
    return cmd_describe(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const dkz::InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const dkz::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const dkz::ExponentOverflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const dkz::SearchExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoPoint;
  } catch (const dkz::Error& e) {
    std::cerr << "check aborted: " << e.what() << '\n';
    return kFail;
  }
}
