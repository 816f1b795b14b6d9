#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "solenoid/cli.hpp"
#include "solenoid/io.hpp"
#include "solenoid/simulate.hpp"

namespace py = pybind11;
using namespace solenoid;
using io::Json;

namespace {

PrimeConfig primes_of(const std::vector<Prime>& primes) { return PrimeConfig(primes); }

SolenoidPoint point_of(const std::vector<std::string>& parts, const PrimeConfig& config) {
  if (parts.size() != config.size() + 1) {
    throw UsageError("point needs " + std::to_string(config.size() + 1) + " components");
  }
  std::vector<Rational> padic;
  for (std::size_t i = 1; i < parts.size(); ++i) padic.push_back(parse_rational(parts[i]));
  return {parse_rational(parts[0]), std::move(padic)};
}

std::string padic_abs_str(const std::string& q, Prime p) { return to_string(padic_abs(parse_rational(q), p)); }

std::optional<long> valuation(const std::string& q, Prime p) {
  const Valuation v = padic_valuation(parse_rational(q), p);
  if (const long* n = std::get_if<long>(&v)) return *n;
  return std::nullopt;
}

std::string diag_norm_str(const std::string& q, const std::vector<Prime>& primes) {
  return to_string(diag_norm(parse_rational(q), primes_of(primes)));
}

std::tuple<std::string, std::string> min_distance(const std::vector<std::string>& point,
                                                  const std::vector<Prime>& primes) {
  const PrimeConfig config = primes_of(primes);
  const DiagonalDistance d = min_diagonal_distance(point_of(point, config), config);
  return {to_string(d.distance), to_string(d.minimizer.value())};
}

std::string certify_json(const std::vector<std::string>& center, const std::optional<std::string>& radius,
                         const std::string& delta, const std::string& gamma_bound, const std::vector<Prime>& primes) {
  const PrimeConfig config = primes_of(primes);
  const SolenoidPoint c = point_of(center, config);
  const GammaBound bound = GammaBound::at_most(parse_rational(gamma_bound));
  const Certificate cert = radius ? certify_bad_on_ball(Ball(c, parse_rational(*radius)), parse_rational(delta), bound, config)
                                  : certify_bad_at_point(c, parse_rational(delta), bound, config);
  return io::to_json(cert).dump();
}

std::string dirichlet_json(const std::vector<std::string>& point, long n, const std::vector<Prime>& primes) {
  const PrimeConfig config = primes_of(primes);
  const DirichletResult r = dirichlet_search(point_of(point, config), Integer(n), config);
  return Json{{"beta", io::to_json(r.beta.value())},
              {"gamma", io::to_json(r.gamma.value())},
              {"distance", io::to_json(r.distance)},
              {"bound", io::to_json(r.bound)}}
      .dump();
}

std::string dim_bound_json(const std::string& alpha, const std::string& beta, const std::vector<Prime>& primes) {
  const DimensionBound d = dim_lower_bound(parse_rational(alpha), parse_rational(beta), primes_of(primes));
  return Json{{"packing_bound", io::to_json(d.packing_bound)}, {"packing_count", d.packing_count.get_str()},
              {"value", d.value}}
      .dump();
}

std::string params_json(const std::string& beta, const std::string& rho0, const std::vector<Prime>& primes) {
  return io::to_json(compute_params(parse_rational(beta), parse_rational(rho0), primes_of(primes))).dump();
}

std::string simulate_json(const std::string& beta, const std::string& rho0, const std::vector<Prime>& primes,
                          long blocks, const std::string& bob, std::uint64_t seed, long extra_balls,
                          const std::string& mode) {
  SimulationConfig cfg{primes_of(primes), parse_rational(beta), parse_rational(rho0), blocks, BobSpec::parse(bob),
                       seed, std::nullopt, extra_balls};
  if (mode == "literal") {
    cfg.mode = AliceMode::Literal;
  } else if (mode != "all-places") {
    throw UsageError("mode: expected literal or all-places");
  }
  const SimulationResult r = [&] {
    py::gil_scoped_release release;
    return simulate(cfg);
  }();
  Json out_blocks = Json::array();
  for (const BlockReport& b : r.blocks) {
    Json pairs = Json::array();
    for (const FractionPair& p : b.pairs) pairs.push_back(io::to_json(p));
    Json entry{{"block", b.block},
               {"case", to_string(b.alice_case)},
               {"pairs", std::move(pairs)},
               {"certified_ball", b.certified_index},
               {"certificate", io::to_json(b.certificate)}};
    if (b.next_certificate) entry["next_certificate"] = io::to_json(*b.next_certificate);
    out_blocks.push_back(std::move(entry));
  }
  Json out{{"success", r.success()},
           {"params", io::to_json(r.params)},
           {"blocks", std::move(out_blocks)},
           {"transcript", io::to_json(r.outcome.transcript)}};
  if (r.fault) out["fault"] = *r.fault;
  return out.dump();
}

std::tuple<int, std::string, std::string> cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic and Schmidt games on the p-adic solenoid";
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  m.attr("__version__") = io::kVersion;
  m.def("padic_abs", &padic_abs_str, py::arg("q"), py::arg("p"));
  m.def("padic_valuation", &valuation, py::arg("q"), py::arg("p"));
  m.def("diag_norm", &diag_norm_str, py::arg("q"), py::arg("primes"));
  m.def("min_diagonal_distance", &min_distance, py::arg("point"), py::arg("primes"));
  m.def("_certify", &certify_json, py::arg("center"), py::arg("radius"), py::arg("delta"), py::arg("gamma_bound"),
        py::arg("primes"));
  m.def("_dirichlet", &dirichlet_json, py::arg("point"), py::arg("n"), py::arg("primes"));
  m.def("_dim_lower_bound", &dim_bound_json, py::arg("alpha"), py::arg("beta"), py::arg("primes"));
  m.def("_compute_params", &params_json, py::arg("beta"), py::arg("rho0"), py::arg("primes"));
  m.def("_simulate", &simulate_json, py::arg("beta"), py::arg("rho0"), py::arg("primes"), py::arg("blocks"),
        py::arg("bob"), py::arg("seed"), py::arg("extra_balls"), py::arg("mode"));
  m.def("run_cli", &cli, py::arg("args"));
}
