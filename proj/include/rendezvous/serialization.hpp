#pragma once

#include <string>

#include "json.hpp"
#include "rendezvous/certificate.hpp"
#include "rendezvous/game.hpp"

namespace rendezvous {

inline constexpr int kSchemaVersion = 1;

// Exact rationals travel as decimal-free "num/den" strings.
nlohmann::json rationalJson(const Rational& r);
Rational rationalFromJson(const nlohmann::json& j);  // "num/den" string or integer

// Certificate file: {schema_version, k, a, x, bound, w, checks, pass} with
// x run-length encoded as [value, count] pairs in index order.
nlohmann::json certificateJson(const Certificate& cert);
void writeCertificateFile(const Certificate& cert, const std::string& path);

// Strategy file: {schema_version, k, p} with p a dense array of 3^k
// rational strings. Validation (nonnegative, sums to 1) is exact.
nlohmann::json strategyJson(const SimplexStrategy& p);
SimplexStrategy strategyFromJson(const nlohmann::json& j);
SimplexStrategy readStrategyFile(const std::string& path);

}  // namespace rendezvous
