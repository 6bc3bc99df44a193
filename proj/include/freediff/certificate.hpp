#pragma once

// Self-contained verification records. The JSON field names are a public
// contract: {claim_id, inputs, witnesses[], status, tolerances[],
// producer_version, timestamp}. Re-validation reproduces a certificate from
// its inputs and compares everything except the timestamp.

#include <chrono>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace freediff {

inline constexpr const char* kProducerVersion = "freediff 0.1.0";

using Json = nlohmann::ordered_json;

struct Witness {
  std::string description;
  Json values;
};

struct Certificate {
  std::string claim_id;
  Json inputs = Json::object();
  std::vector<Witness> witnesses;
  bool pass = false;
  std::vector<std::pair<std::string, double>> tolerances;
  std::string producer_version = kProducerVersion;
  std::string timestamp;

  void stamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    timestamp = buf;
  }

  Json to_json() const {
    Json j;
    j["claim_id"] = claim_id;
    j["inputs"] = inputs;
    Json ws = Json::array();
    for (const auto& w : witnesses)
      ws.push_back(Json{{"description", w.description}, {"values", w.values}});
    j["witnesses"] = ws;
    j["status"] = pass ? "pass" : "fail";
    Json ts = Json::array();
    for (const auto& [name, value] : tolerances)
      ts.push_back(Json{{"name", name}, {"value", value}});
    j["tolerances"] = ts;
    j["producer_version"] = producer_version;
    j["timestamp"] = timestamp;
    return j;
  }

  static Certificate from_json(const Json& j) {
    Certificate c;
    c.claim_id = j.at("claim_id").get<std::string>();
    c.inputs = j.at("inputs");
    for (const auto& w : j.at("witnesses"))
      c.witnesses.push_back(
          {w.at("description").get<std::string>(), w.at("values")});
    c.pass = j.at("status").get<std::string>() == "pass";
    for (const auto& t : j.at("tolerances"))
      c.tolerances.emplace_back(t.at("name").get<std::string>(),
                                t.at("value").get<double>());
    c.producer_version = j.at("producer_version").get<std::string>();
    c.timestamp = j.value("timestamp", "");
    return c;
  }

  /// Equality modulo the timestamp field.
  bool content_equal(const Certificate& o) const {
    Json a = to_json();
    Json b = o.to_json();
    a.erase("timestamp");
    b.erase("timestamp");
    return a == b;
  }
};

}  // namespace freediff
