#include "rendezvous/serialization.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rendezvous {

nlohmann::json rationalJson(const Rational& r) { return r.str(); }

Rational rationalFromJson(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::fromString(j.get<std::string>());
  throw std::invalid_argument("expected a rational as a \"num/den\" string or an integer");
}

namespace {

nlohmann::json reportJson(const DominationReport& rep) {
  return {{"ok", rep.ok}, {"entries", rep.entries}, {"first_violation", rep.firstViolation}};
}

nlohmann::json reportJson(const SpectrumReport& rep) {
  return {{"ok", rep.ok},
          {"entries", rep.entries},
          {"first_negative", rep.firstNegative},
          {"min_value", rationalJson(rep.minValue)},
          {"min_index", rep.minIndex},
          {"zero_count", rep.zeroCount},
          {"three_halves_count", rep.threeHalvesCount},
          {"doubled_integral", rep.doubledIntegral},
          {"cross_checked", rep.crossChecked}};
}

}  // namespace

nlohmann::json certificateJson(const Certificate& cert) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : cert.schedule) a.push_back(rationalJson(v));
  nlohmann::json x = nlohmann::json::array();
  for (const auto& [value, count] : xRuns(cert.k))
    x.push_back(nlohmann::json::array({rationalJson(value), count}));
  nlohmann::json checks = {{"domination", reportJson(cert.domination)},
                           {"spectrum", reportJson(cert.spectrum)},
                           {"bound_matches", cert.boundMatches}};
  if (cert.t) checks["t_consistent"] = cert.t->consistent;
  return {{"schema_version", kSchemaVersion},
          {"k", cert.k},
          {"a", std::move(a)},
          {"x", std::move(x)},
          {"bound", rationalJson(cert.bound)},
          {"w", rationalJson(cert.w)},
          {"checks", std::move(checks)},
          {"pass", cert.pass}};
}

void writeCertificateFile(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open certificate file for writing: " + path);
  out << certificateJson(cert).dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing certificate file: " + path);
}

nlohmann::json strategyJson(const SimplexStrategy& p) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::int64_t i = 0; i < p.dist.size(); ++i) entries.push_back(rationalJson(p.dist[i]));
  return {{"schema_version", kSchemaVersion}, {"k", p.level()}, {"p", std::move(entries)}};
}

SimplexStrategy strategyFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("p"))
    throw std::invalid_argument("strategy JSON needs fields \"k\" and \"p\"");
  const int k = j.at("k").get<int>();
  const auto& arr = j.at("p");
  if (!arr.is_array()) throw std::invalid_argument("strategy field \"p\" must be an array");
  std::vector<Rational> entries;
  entries.reserve(arr.size());
  for (const auto& e : arr) entries.push_back(rationalFromJson(e));
  return SimplexStrategy(PathVector(k, std::move(entries)));
}

SimplexStrategy readStrategyFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open strategy file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed strategy file " + path + ": " + e.what());
  }
  return strategyFromJson(j);
}

}  // namespace rendezvous
