#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dkz/padic_eval.hpp"
#include "json.hpp"

namespace dkz::cli {

using Json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kNoPoint = 3 };

/// Error in the configuration itself, reported with exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string suite;
  std::uint64_t p = 0, q = 0;
  int g = 0;
  int m = 1;
  int s_max = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::string mode = "auto";
  int count = 0;  // 0: command default
  std::string out;
  int precision_guard = 2;
  int workers = 1;
  int search_budget = 0;  // 0: library default
};

struct Job {
  std::string label;
  std::function<std::vector<CongruenceReport>()> run;
};

/// Runs jobs on `workers` threads; results keep job order. Heartbeats go to stderr.
template <class R>
std::vector<R> run_pool(const std::vector<std::string>& labels, const std::vector<std::function<R()>>& jobs,
                        int workers) {
  std::vector<R> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        out[k] = jobs[k]();
      } catch (...) {
        errors[k] = std::current_exception();
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard<std::mutex> lock(log);
      std::cerr << "[dkz] " << ++done << "/" << jobs.size() << " " << labels[k] << " (" << secs << " s)\n";
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Json report_json(const CongruenceReport& r);
Json valuation_json(const PadicValuation& v);
void write_output(const RunConfig& cfg, const Json& doc);
/// Fixed-width table of reports on stdout.
void print_table(const std::vector<CongruenceReport>& reports);

int cmd_verify(const RunConfig& cfg);
int cmd_converge(const RunConfig& cfg);

}  // namespace dkz::cli
