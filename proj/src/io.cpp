#include "solenoid/io.hpp"

#include <charconv>

namespace solenoid::io {

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParameterError("expected a \"num/den\" string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Json to_json(const PrimeConfig& config) {
  Json out = Json::array();
  for (Prime p : config.primes()) out.push_back(p);
  return out;
}

PrimeConfig config_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("primes must be an array");
  return PrimeConfig(j.get<std::vector<Prime>>());
}

Json to_json(const SolenoidPoint& x) {
  Json out = Json::array();
  out.push_back(to_json(x.arch()));
  for (const Rational& c : x.padic()) out.push_back(to_json(c));
  return out;
}

SolenoidPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParameterError("point must be a non-empty array");
  std::vector<Rational> padic;
  for (std::size_t i = 1; i < j.size(); ++i) padic.push_back(rational_from_json(j[i]));
  return {rational_from_json(j[0]), std::move(padic)};
}

Json to_json(const Ball& b) { return Json{{"center", to_json(b.center())}, {"radius", to_json(b.radius())}}; }

Ball ball_from_json(const Json& j) { return {point_from_json(j.at("center")), rational_from_json(j.at("radius"))}; }

Json to_json(const Transcript& t) {
  Json moves = Json::array();
  for (std::size_t ply = 0; ply < t.size(); ++ply) {
    const Move& m = t.moves()[ply];
    moves.push_back(Json{{"ply", ply},
                         {"role", to_string(m.role)},
                         {"index", m.index},
                         {"center", to_json(m.ball.center())},
                         {"radius", to_json(m.ball.radius())}});
  }
  Json annotations = Json::array();
  for (const Annotation& a : t.annotations()) {
    Json notes = Json::object();
    for (const auto& [k, v] : a.notes) notes[k] = v;
    annotations.push_back(Json{{"ply", a.ply}, {"notes", std::move(notes)}});
  }
  return Json{{"primes", to_json(t.config())},
              {"alpha", to_json(t.params().alpha)},
              {"beta", to_json(t.params().beta)},
              {"rho0", to_json(t.rho0())},
              {"moves", std::move(moves)},
              {"annotations", std::move(annotations)}};
}

Transcript transcript_from_json(const Json& j) {
  GameParams params(rational_from_json(j.at("alpha")), rational_from_json(j.at("beta")),
                    config_from_json(j.at("primes")));
  Transcript t(std::move(params), rational_from_json(j.at("rho0")));
  for (const Json& m : j.at("moves")) {
    const std::string role = m.at("role").get<std::string>();
    if (role != "bob" && role != "alice") throw ParameterError("unknown role '" + role + "'");
    t.append(Move{role == "bob" ? Role::Bob : Role::Alice, m.at("index").get<std::size_t>(),
                  Ball(point_from_json(m.at("center")), rational_from_json(m.at("radius")))});
  }
  if (j.contains("annotations")) {
    for (const Json& a : j.at("annotations")) {
      Notes notes;
      for (const auto& [k, v] : a.at("notes").items()) notes.emplace_back(k, v.get<std::string>());
      t.annotate({a.at("ply").get<std::size_t>(), std::move(notes)});
    }
  }
  return t;
}

Json to_json(const Certificate& c) {
  Json out;
  if (const Ball* b = std::get_if<Ball>(&c.subject)) {
    out["subject"] = Json{{"ball", to_json(*b)}};
  } else {
    out["subject"] = Json{{"point", to_json(std::get<SolenoidPoint>(c.subject))}};
  }
  out["delta"] = to_json(c.delta);
  out["gamma_bound"] = Json{{"squared", to_json(c.gamma_bound.squared)}, {"inclusive", c.gamma_bound.inclusive}};
  out["verdict"] = c.verdict;
  out["gammas_checked"] = c.gammas_checked;
  Json w = Json::array();
  for (const Witness& x : c.witnesses) {
    w.push_back(Json{{"gamma", to_json(x.gamma.value())},
                     {"beta", to_json(x.beta.value())},
                     {"distance", to_json(x.distance)}});
  }
  out["witnesses"] = std::move(w);
  return out;
}

Json to_json(const StrategyParams& p) {
  return Json{{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)},   {"c", to_json(p.c)},
              {"delta", to_json(p.delta)}, {"t", p.t},                  {"rsq", to_json(p.rsq)},
              {"rho0", to_json(p.rho0)},   {"preamble", p.preamble_length()}};
}

Json to_json(const FractionPair& p) {
  return Json{{"beta", to_json(p.numerator.value())},
              {"gamma", to_json(p.denominator.value())},
              {"quotient", to_json(p.quotient())}};
}

Json envelope(std::string_view command, Json config, Json result, Json diagnostics) {
  return Json{{"command", command},
              {"config", std::move(config)},
              {"result", std::move(result)},
              {"diagnostics", std::move(diagnostics)},
              {"version", kVersion}};
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

SolenoidPoint parse_point(std::string_view text, std::size_t rank) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != rank + 1) {
    throw UsageError("expected " + std::to_string(rank + 1) + " components, got " + std::to_string(parts.size()));
  }
  std::vector<Rational> padic;
  for (std::size_t i = 1; i < parts.size(); ++i) padic.push_back(parse_rational(parts[i]));
  return {parse_rational(parts[0]), std::move(padic)};
}

PrimeConfig parse_primes(std::string_view text) {
  std::vector<Prime> primes;
  for (const std::string& part : split(text, ',')) {
    Prime p = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), p);
    if (ec != std::errc() || end != part.data() + part.size()) {
      throw ConfigError("not a prime: '" + part + "'");
    }
    primes.push_back(p);
  }
  return PrimeConfig(std::move(primes));
}

}  // namespace solenoid::io
