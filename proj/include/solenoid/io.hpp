#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "solenoid/arith.hpp"
#include "solenoid/game.hpp"
#include "solenoid/geometry.hpp"
#include "solenoid/strategy.hpp"
#include "solenoid/verify.hpp"

namespace solenoid::io {

/// Key order is preserved so that output is byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = SOLENOID_VERSION;

// Rationals are always "num/den" strings; JSON numbers are never used for them.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const PrimeConfig& config);
PrimeConfig config_from_json(const Json& j);

/// Components in the order (arch, p_1, ..., p_k).
Json to_json(const SolenoidPoint& x);
SolenoidPoint point_from_json(const Json& j);

Json to_json(const Ball& b);
Ball ball_from_json(const Json& j);

Json to_json(const Transcript& t);
/// Rebuilds a transcript without checking legality; pass it to revalidate().
Transcript transcript_from_json(const Json& j);

Json to_json(const Certificate& c);
Json to_json(const StrategyParams& p);
Json to_json(const FractionPair& p);

Json envelope(std::string_view command, Json config, Json result, Json diagnostics);

/// "1/2,0,3" -> point with the given number of p-adic slots.
SolenoidPoint parse_point(std::string_view text, std::size_t rank);
/// "2,3,5" -> PrimeConfig.
PrimeConfig parse_primes(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace solenoid::io
