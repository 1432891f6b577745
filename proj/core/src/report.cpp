#include "dkz/report.hpp"

#include "json.hpp"

namespace dkz {

namespace {

nlohmann::ordered_json as_json(const CongruenceReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["mode"] = to_string(r.mode);
  j["claimed_exponent"] = r.claimed_exponent ? nlohmann::ordered_json(*r.claimed_exponent) : nlohmann::ordered_json();
  if (r.measured_valuation) {
    j["measured_valuation"] = r.measured_valuation->value;
    j["saturated"] = r.measured_valuation->saturated;
  } else {
    j["measured_valuation"] = nullptr;
  }
  j["pass"] = r.pass;
  j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json();
  if (!r.notes.empty()) {
    nlohmann::ordered_json notes = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    j["notes"] = notes;
  }
  return j;
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::Symbolic ? "symbolic" : "evaluation"; }

void CongruenceReport::set_valuation(int claimed, PadicValuation measured) {
  claimed_exponent = claimed;
  measured_valuation = measured;
  pass = measured.value >= claimed;
}

void CongruenceReport::merge(const CongruenceReport& other) {
  if (other.measured_valuation) {
    if (!measured_valuation || other.measured_valuation->value < measured_valuation->value)
      measured_valuation = other.measured_valuation;
  }
  if (!claimed_exponent) claimed_exponent = other.claimed_exponent;
  if (!witness && other.witness) witness = other.witness;
  pass = pass && other.pass;
}

std::string CongruenceReport::to_json() const { return as_json(*this).dump(2); }

std::string reports_to_json(const std::vector<CongruenceReport>& reports, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(as_json(r));
  return arr.dump(indent);
}

}  // namespace dkz
