#pragma once

// Outcome of one congruence or structural check, serializable to JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dkz/ring.hpp"

namespace dkz {

enum class Mode { Symbolic, Evaluation };

std::string to_string(Mode m);

struct CongruenceReport {
  std::string check;
  std::vector<std::pair<std::string, std::int64_t>> params;
  Mode mode = Mode::Symbolic;
  /// Absent for structural checks (inclusions, degrees, identities over Z).
  std::optional<int> claimed_exponent;
  /// Minimal valuation seen; equals the working precision when saturated.
  std::optional<PadicValuation> measured_valuation;
  bool pass = false;
  std::optional<std::string> witness;
  /// Free-form extra facts (resolved signs, point counts, ...).
  std::vector<std::pair<std::string, std::string>> notes;

  CongruenceReport& param(const std::string& key, std::int64_t value) {
    params.emplace_back(key, value);
    return *this;
  }
  CongruenceReport& note(const std::string& key, const std::string& value) {
    notes.emplace_back(key, value);
    return *this;
  }
  /// Set claimed/measured and derive pass.
  void set_valuation(int claimed, PadicValuation measured);
  /// Fold another measurement in (min valuation, first witness, pass = all).
  void merge(const CongruenceReport& other);

  std::string to_json() const;
};

std::string reports_to_json(const std::vector<CongruenceReport>& reports, int indent = 2);

}  // namespace dkz
