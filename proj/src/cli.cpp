#include "solenoid/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "solenoid/io.hpp"
#include "solenoid/simulate.hpp"

namespace solenoid {

namespace {

using io::Json;

constexpr const char* kOutputDirEnv = "SOLENOID_OUTPUT_DIR";

// Re-raises parse failures with the offending flag in the message.
template <typename F>
auto field(const std::string& name, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
}

Rational rational_field(const std::string& name, const std::string& text) {
  return field(name, [&] { return parse_rational(text); });
}

SolenoidPoint point_field(const std::string& name, const std::string& text, const PrimeConfig& config) {
  return field(name, [&] { return io::parse_point(text, config.size()); });
}

PrimeConfig primes_field(const std::string& text) {
  return field("--primes", [&] { return io::parse_primes(text); });
}

Integer integer_field(const std::string& name, const std::string& text) {
  const Rational q = rational_field(name, text);
  if (q.get_den() != 1) throw UsageError(name + ": expected an integer, got " + text);
  return q.get_num();
}

std::filesystem::path output_path(const std::string& requested) {
  std::filesystem::path p(requested);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  }
  return p;
}

struct Common {
  std::string primes = "2,3";
  std::string output;
};

void emit(const Json& doc, const Common& common, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (common.output.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path p = output_path(common.output);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("--output: cannot open " + p.string());
  f << text;
}

Json simulation_json(const SimulationConfig& cfg, const SimulationResult& r) {
  Json blocks = Json::array();
  for (const BlockReport& b : r.blocks) {
    Json pairs = Json::array();
    for (const FractionPair& p : b.pairs) pairs.push_back(io::to_json(p));
    Json entry{{"block", b.block},
               {"case", to_string(b.alice_case)},
               {"pairs", std::move(pairs)},
               {"certified_ball", b.certified_index},
               {"certificate", io::to_json(b.certificate)}};
    if (b.next_certificate) entry["next_certificate"] = io::to_json(*b.next_certificate);
    blocks.push_back(std::move(entry));
  }
  Json out{{"seed", cfg.seed},
           {"success", r.success()},
           {"params", io::to_json(r.params)},
           {"blocks", std::move(blocks)},
           {"transcript", io::to_json(r.outcome.transcript)}};
  if (r.outcome.violation) {
    const Violation& v = *r.outcome.violation;
    out["violation"] = Json{{"clause", to_string(v.clause)}, {"ply", v.ply}, {"message", v.message}};
  }
  if (r.fault) out["fault"] = *r.fault;
  return out;
}

struct SimulateOpts {
  std::string beta, rho0, bob = "concentric", center, mode = "all-places";
  long blocks = 1;
  long extra_balls = 0;
  std::uint64_t seed = 0;
  unsigned batch = 1;
};

int cmd_simulate(const Common& common, const SimulateOpts& o, std::ostream& out) {
  SimulationConfig base{primes_field(common.primes), rational_field("--beta", o.beta),
                        rational_field("--rho0", o.rho0), o.blocks,
                        field("--bob", [&] { return BobSpec::parse(o.bob); }), o.seed, std::nullopt, o.extra_balls};
  if (!o.center.empty()) base.center = point_field("--center", o.center, base.config);
  if (o.mode == "literal") {
    base.mode = AliceMode::Literal;
  } else if (o.mode != "all-places") {
    throw UsageError("--mode: expected literal or all-places, got " + o.mode);
  }
  field("--beta", [&] { return compute_params(base.beta, base.rho0, base.config); });
  if (o.blocks < 1) throw UsageError("--blocks: must be >= 1");
  if (o.extra_balls < 0) throw UsageError("--extra-balls: must be >= 0");
  if (o.batch < 1) throw UsageError("--batch: must be >= 1");

  std::vector<SimulationConfig> configs;
  for (unsigned i = 0; i < o.batch; ++i) {
    configs.push_back(base);
    configs.back().seed = o.seed + i;
  }
  std::vector<std::future<SimulationResult>> futures;
  for (const SimulationConfig& c : configs) futures.push_back(std::async(std::launch::async, simulate, c));

  Json runs = Json::array();
  bool ok = true;
  long certificates = 0;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const SimulationResult r = futures[i].get();
    ok = ok && r.success();
    certificates += static_cast<long>(r.blocks.size());
    runs.push_back(simulation_json(configs[i], r));
  }
  Json config{{"primes", io::to_json(base.config)}, {"beta", io::to_json(base.beta)},
              {"rho0", io::to_json(base.rho0)},     {"blocks", o.blocks},
              {"bob", base.bob.describe()},         {"seed", o.seed},
              {"batch", o.batch},                   {"mode", o.mode}};
  Json result = o.batch == 1 ? runs[0] : Json{{"runs", runs}};
  emit(io::envelope("simulate", config, result, Json{{"certificates", certificates}, {"all_true", ok}}), common, out);
  return ok ? kSuccess : kVerdictFalse;
}

struct CertifyOpts {
  std::string point, center, radius, delta, gamma_bound;
};

int cmd_certify(const Common& common, const CertifyOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const Rational delta = rational_field("--delta", o.delta);
  if (sgn(delta) <= 0) throw UsageError("--delta: must be positive");
  const GammaBound bound = GammaBound::at_most(rational_field("--gamma-bound", o.gamma_bound));
  Certificate cert;
  if (!o.point.empty()) {
    cert = certify_bad_at_point(point_field("--point", o.point, config), delta, bound, config);
  } else {
    if (o.center.empty() || o.radius.empty()) throw UsageError("certify needs --point or --center with --radius");
    const Rational radius = rational_field("--radius", o.radius);
    if (sgn(radius) <= 0) throw UsageError("--radius: must be positive");
    cert = certify_bad_on_ball(Ball(point_field("--center", o.center, config), radius), delta, bound, config);
  }
  Json cfg{{"primes", io::to_json(config)}, {"delta", io::to_json(delta)}, {"gamma_bound", o.gamma_bound}};
  emit(io::envelope("certify", cfg, io::to_json(cert), Json{{"witnesses", cert.witnesses.size()}}), common, out);
  return cert.verdict ? kSuccess : kVerdictFalse;
}

struct DirichletOpts {
  std::string point, n;
};

int cmd_dirichlet(const Common& common, const DirichletOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const SolenoidPoint x = point_field("--point", o.point, config);
  const Integer N = integer_field("--N", o.n);
  if (N < 1) throw UsageError("--N: must be a positive integer");
  const DirichletResult r = dirichlet_search(x, N, config);
  Json result{{"beta", io::to_json(r.beta.value())},
              {"gamma", io::to_json(r.gamma.value())},
              {"gamma_norm", io::to_json(diag_norm(r.gamma, config))},
              {"distance", io::to_json(r.distance)},
              {"bound", io::to_json(r.bound)}};
  Json cfg{{"primes", io::to_json(config)}, {"point", io::to_json(x)}, {"N", N.get_str()}};
  emit(io::envelope("dirichlet", cfg, result, Json::object()), common, out);
  return kSuccess;
}

struct DangerOpts {
  std::string center, radius, beta, rho0;
  long block = 1;
};

int cmd_danger(const Common& common, const DangerOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const StrategyParams params = field("--beta", [&] {
    return compute_params(rational_field("--beta", o.beta), rational_field("--rho0", o.rho0), config);
  });
  const Rational radius = rational_field("--radius", o.radius);
  if (sgn(radius) <= 0) throw UsageError("--radius: must be positive");
  if (o.block < 1) throw UsageError("--block: must be >= 1");
  const Ball ball(point_field("--center", o.center, config), radius);
  const std::vector<FractionPair> pairs = find_danger_pairs(ball, o.block, params);
  Json list = Json::array();
  for (const FractionPair& p : pairs) list.push_back(io::to_json(p));
  Json result{{"pairs", list}};
  if (const auto canon = find_danger_pair(ball, o.block, params)) {
    result["canonical"] = Json{{"beta", io::to_json(canon->beta.value())},
                               {"gamma", io::to_json(canon->gamma.value())},
                               {"quotient", io::to_json(canon->quotient)}};
  } else {
    result["canonical"] = nullptr;
  }
  Json cfg{{"primes", io::to_json(config)}, {"ball", io::to_json(ball)}, {"block", o.block}};
  emit(io::envelope("danger", cfg, result, Json{{"params", io::to_json(params)}}), common, out);
  return kSuccess;
}

struct PackingOpts {
  std::string center, radius = "1", beta;
};

int cmd_packing(const Common& common, const PackingOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const Rational beta = rational_field("--beta", o.beta);
  const Rational radius = rational_field("--radius", o.radius);
  if (sgn(radius) <= 0) throw UsageError("--radius: must be positive");
  const SolenoidPoint c =
      o.center.empty() ? SolenoidPoint::diagonal(0, config.size()) : point_field("--center", o.center, config);
  const Ball parent(c, radius);
  const std::vector<Ball> balls = field("--beta", [&] { return packing_construct(parent, beta, config); });
  Json list = Json::array();
  for (const Ball& b : balls) list.push_back(io::to_json(b));
  const Rational bound = packing_lower_bound(beta, config);
  Json result{{"count", balls.size()}, {"lower_bound", io::to_json(bound)}, {"balls", list}};
  Json cfg{{"primes", io::to_json(config)}, {"ball", io::to_json(parent)}, {"beta", io::to_json(beta)}};
  emit(io::envelope("packing", cfg, result, Json::object()), common, out);
  return Rational(static_cast<unsigned long>(balls.size())) >= bound ? kSuccess : kVerdictFalse;
}

struct DimboundOpts {
  std::string alpha;
  std::vector<std::string> betas;
  bool sweep = false;
};

int cmd_dimbound(const Common& common, const DimboundOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const Rational alpha = o.alpha.empty() ? winning_alpha(config) : rational_field("--alpha", o.alpha);
  std::vector<Rational> betas;
  for (const std::string& b : o.betas) betas.push_back(rational_field("--beta", b));
  if (o.sweep) {
    for (long e = 1; e <= 20; ++e) betas.push_back(power(Rational(1, 10), e));
  }
  if (betas.empty()) throw UsageError("dimbound needs --beta or --sweep");
  Json rows = Json::array();
  for (const Rational& beta : betas) {
    const DimensionBound d = field("--beta", [&] { return dim_lower_bound(alpha, beta, config); });
    std::ostringstream value;
    value.precision(15);
    value << d.value;
    rows.push_back(Json{{"beta", io::to_json(beta)},
                        {"packing_bound", io::to_json(d.packing_bound)},
                        {"packing_count", d.packing_count.get_str()},
                        {"dimension_bound", value.str()}});
  }
  Json cfg{{"primes", io::to_json(config)}, {"alpha", io::to_json(alpha)}};
  emit(io::envelope("dimbound", cfg, Json{{"rows", rows}}, Json{{"limit", config.size() + 1}}), common, out);
  return kSuccess;
}

struct SpectrumOpts {
  std::string point, bound;
};

int cmd_spectrum(const Common& common, const SpectrumOpts& o, std::ostream& out) {
  const PrimeConfig config = primes_field(common.primes);
  const SolenoidPoint x = point_field("--point", o.point, config);
  const Rational bound = rational_field("--bound", o.bound);
  Json rows = Json::array();
  for (const SpectrumRow& r : approximation_spectrum(x, bound, config)) {
    rows.push_back(Json{{"gamma", io::to_json(r.gamma.value())},
                        {"beta", io::to_json(r.beta.value())},
                        {"distance", io::to_json(r.distance)},
                        {"normalized", io::to_json(r.normalized)}});
  }
  Json cfg{{"primes", io::to_json(config)}, {"point", io::to_json(x)}, {"bound", io::to_json(bound)}};
  emit(io::envelope("spectrum", cfg, Json{{"rows", rows}}, Json{{"count", rows.size()}}), common, out);
  return kSuccess;
}

int cmd_revalidate(const Common& common, const std::string& input, std::ostream& out) {
  std::ifstream f(input, std::ios::binary);
  if (!f) throw UsageError("--input: cannot open " + input);
  Json doc = field("--input", [&] { return Json::parse(f); });
  // Accept a bare transcript, a simulate envelope, or one run of it.
  const Json* node = &doc;
  if (node->contains("result")) node = &node->at("result");
  if (node->contains("runs")) throw UsageError("--input: batch output holds several transcripts; extract one");
  if (node->contains("transcript")) node = &node->at("transcript");
  const Transcript t = field("--input", [&] { return io::transcript_from_json(*node); });
  const Legality ok = revalidate(t);
  Json result{{"legal", static_cast<bool>(ok)}, {"plies", t.size()}};
  if (!ok) {
    result["violation"] = Json{{"clause", to_string(ok.violation->clause)},
                               {"ply", ok.violation->ply},
                               {"message", ok.violation->message}};
  }
  emit(io::envelope("revalidate", Json{{"input", input}}, result, Json::object()), common, out);
  return ok ? kSuccess : kVerdictFalse;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on the p-adic solenoid and Schmidt's game", "solenoid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--primes", common.primes, "Comma-separated primes")->capture_default_str();
    sub->add_option("--output", common.output, "Write JSON here (relative paths resolve against $" +
                                                     std::string(kOutputDirEnv) + ")");
  };

  SimulateOpts sim;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Alice's strategy against a Bob, with certificates");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--beta", sim.beta, "Bob's contraction")->required();
  simulate_cmd->add_option("--rho0", sim.rho0, "Radius of B_0")->required();
  simulate_cmd->add_option("--blocks", sim.blocks, "Blocks to play and certify")->capture_default_str();
  simulate_cmd->add_option("--bob", sim.bob, "concentric | random | targeting:<q>")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Seed for random Bob")->capture_default_str();
  simulate_cmd->add_option("--extra-balls", sim.extra_balls, "Bob balls played past the last certified one")
      ->capture_default_str();
  simulate_cmd->add_option("--center", sim.center, "Center of B_0 (default origin)");
  simulate_cmd->add_option("--mode", sim.mode, "Alice's dodge rule: all-places | literal")->capture_default_str();
  simulate_cmd->add_option("--batch", sim.batch, "Run seeds seed..seed+batch-1 concurrently")->capture_default_str();

  CertifyOpts cert;
  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify delta-badness on a ball or at a point");
  add_common(certify_cmd);
  certify_cmd->add_option("--point", cert.point, "Point (arch,p1,...,pk)");
  certify_cmd->add_option("--center", cert.center, "Ball center");
  certify_cmd->add_option("--radius", cert.radius, "Ball radius");
  certify_cmd->add_option("--delta", cert.delta)->required();
  certify_cmd->add_option("--gamma-bound", cert.gamma_bound, "Check all gamma with |gamma| <= bound")->required();

  DirichletOpts dir;
  CLI::App* dirichlet_cmd = app.add_subcommand("dirichlet", "Find beta, gamma with |gamma x - beta| <= M/N");
  add_common(dirichlet_cmd);
  dirichlet_cmd->add_option("--point", dir.point)->required();
  dirichlet_cmd->add_option("--N", dir.n)->required();

  DangerOpts dan;
  CLI::App* danger_cmd = app.add_subcommand("danger", "Dangerous pairs for a ball opening a block");
  add_common(danger_cmd);
  danger_cmd->add_option("--center", dan.center)->required();
  danger_cmd->add_option("--radius", dan.radius)->required();
  danger_cmd->add_option("--beta", dan.beta)->required();
  danger_cmd->add_option("--rho0", dan.rho0)->required();
  danger_cmd->add_option("--block", dan.block)->capture_default_str();

  PackingOpts pack;
  CLI::App* packing_cmd = app.add_subcommand("packing", "Disjoint subballs of contraction beta");
  add_common(packing_cmd);
  packing_cmd->add_option("--center", pack.center, "Parent center (default origin)");
  packing_cmd->add_option("--radius", pack.radius)->capture_default_str();
  packing_cmd->add_option("--beta", pack.beta)->required();

  DimboundOpts dim;
  CLI::App* dimbound_cmd = app.add_subcommand("dimbound", "Hausdorff dimension lower bound");
  add_common(dimbound_cmd);
  dimbound_cmd->add_option("--alpha", dim.alpha, "Default: min 1/p^2");
  dimbound_cmd->add_option("--beta", dim.betas, "One or more betas")->delimiter(',');
  dimbound_cmd->add_flag("--sweep", dim.sweep, "beta = 10^-1 ... 10^-20");

  SpectrumOpts spec;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Normalized approximation errors per gamma");
  add_common(spectrum_cmd);
  spectrum_cmd->add_option("--point", spec.point)->required();
  spectrum_cmd->add_option("--bound", spec.bound)->required();

  std::string input;
  CLI::App* revalidate_cmd = app.add_subcommand("revalidate", "Re-check a transcript ply by ply");
  revalidate_cmd->group("");
  add_common(revalidate_cmd);
  revalidate_cmd->add_option("--input", input)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(common, sim, out);
    if (*certify_cmd) return cmd_certify(common, cert, out);
    if (*dirichlet_cmd) return cmd_dirichlet(common, dir, out);
    if (*danger_cmd) return cmd_danger(common, dan, out);
    if (*packing_cmd) return cmd_packing(common, pack, out);
    if (*dimbound_cmd) return cmd_dimbound(common, dim, out);
    if (*spectrum_cmd) return cmd_spectrum(common, spec, out);
    if (*revalidate_cmd) return cmd_revalidate(common, input, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kVerdictFalse;
  }
  return kUsage;
}

}  // namespace solenoid
