// toricpq: polytope checks, reduction reports, the smooth Fano census,
// catalog verification, and contact flow residuals from one binary.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/catalog.hpp"
#include "toric/census.hpp"
#include "toric/contact.hpp"
#include "toric/delzant.hpp"
#include "toric/polytope.hpp"

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// FILE or catalog:NAME.
toric::Polytope load_polytope(const std::string& source) {
  if (source.rfind("catalog:", 0) == 0)
    return toric::builtin(source.substr(8)).polytope;
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("cannot read " + source);
  std::ostringstream buf;
  buf << in.rdbuf();
  return toric::parse_polytope(buf.str());
}

void emit(const json& doc, bool structured) {
  if (structured) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") continue;
    std::cout << key << ": "
              << (value.is_string() ? value.get<std::string>() : value.dump())
              << "\n";
  }
}

int run_check(const std::string& source, const std::vector<std::string>& require,
              bool structured) {
  toric::Polytope P = load_polytope(source);
  json doc{{"schema_version", kSchemaVersion}, {"command", "check"}};
  doc["name"] = P.name;
  bool compact = toric::is_compact(P);
  doc["compact"] = compact;
  bool smooth = false, monotone = false, even = false;
  if (compact) {
    auto cert = toric::is_smooth(P);
    smooth = cert.smooth;
    if (!cert.smooth) doc["smooth_failure"] = cert.reason;
    monotone = toric::monotone_normalize(P).has_value();
    even = toric::is_even(P);
  }
  doc["smooth"] = smooth;
  doc["monotone"] = monotone;
  doc["even"] = even;

  bool ok = true;
  for (const auto& r : require) {
    bool value = r == "compact"  ? compact
                 : r == "smooth" ? smooth
                 : r == "monotone" ? monotone
                 : r == "even"     ? even
                                   : throw std::invalid_argument(
                                         "unknown predicate " + r);
    if (!value) ok = false;
  }
  doc["required_ok"] = ok;
  emit(doc, structured);
  return ok ? 0 : 1;
}

int run_delzant(const std::string& source, bool structured) {
  toric::Polytope P = load_polytope(source);
  toric::DelzantReport report;
  try {
    report = toric::delzant_report(P);
  } catch (const std::runtime_error& e) {
    json doc{{"schema_version", kSchemaVersion},
             {"command", "delzant"},
             {"name", P.name},
             {"failure", e.what()}};
    emit(doc, structured);
    return 1;
  }
  json doc = json::parse(toric::serialize_report(report));
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "delzant";
  doc["name"] = P.name;
  emit(doc, structured);
  return 0;
}

int run_census(std::size_t dim, int bound, bool stabilize, bool structured) {
  auto result = toric::enumerate_smooth_fano(dim, bound);
  // Annotate matches without insisting every entry appears: small
  // bounds legitimately miss the wider catalog entries.
  for (const auto& name : toric::catalog_names()) {
    auto e = toric::builtin(name);
    if (e.polytope.dim != dim || !e.expect_even) continue;
    auto cf = toric::canonical_form(e.polytope.conormals);
    for (auto& cls : result.classes)
      if (cls.canonical == cf) cls.matched_catalog_name = e.name;
  }
  json doc = json::parse(toric::serialize_census(result));
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "census";
  if (stabilize) {
    bool stable = toric::verify_stabilization(dim, bound);
    doc["stable_at_next_bound"] = stable;
    emit(doc, structured);
    return stable ? 0 : 1;
  }
  emit(doc, structured);
  return 0;
}

int run_catalog(const std::string& name, bool structured) {
  if (!name.empty()) {
    auto entry = toric::builtin(name);
    json doc{{"schema_version", kSchemaVersion},
             {"command", "catalog"},
             {"name", entry.name},
             {"polytope", json::parse(toric::serialize_polytope(entry.polytope))},
             {"expect_even", entry.expect_even}};
    for (const auto& field : entry.provenance)
      doc["expected"][field.name] = field.value;
    emit(doc, structured);
    return 0;
  }
  auto report = toric::verify_catalog();
  json doc{{"schema_version", kSchemaVersion}, {"command", "catalog"}};
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"entry", c.entry},
                      {"field", c.field},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  doc["checks"] = checks;
  doc["all_passed"] = report.all_passed();
  if (!structured) {
    std::cout << toric::format_report(report);
    return report.all_passed() ? 0 : 1;
  }
  emit(doc, true);
  return report.all_passed() ? 0 : 1;
}

int run_flow(const std::vector<long>& gamma, const std::string& hamiltonian,
             double T, double dt, std::uint64_t seed, bool structured) {
  toric::Hamiltonian h;
  if (hamiltonian == "reeb") {
    h = toric::constant_hamiltonian(1.0);
  } else {
    toric::Vec lambda(static_cast<Eigen::Index>(gamma.size()));
    std::stringstream ss(hamiltonian);
    std::string tok;
    Eigen::Index i = 0;
    while (std::getline(ss, tok, ',')) {
      if (i >= lambda.size())
        throw std::invalid_argument("too many hamiltonian coefficients");
      lambda[i++] = std::stod(tok);
    }
    if (i != lambda.size())
      throw std::invalid_argument("hamiltonian coefficient count mismatch");
    h = toric::moment_hamiltonian(lambda);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  toric::Vec z(2 * static_cast<Eigen::Index>(gamma.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = gauss(rng);
  auto start = toric::project_to_sphere(gamma, z);
  auto traj = toric::integrate_flow(h, start, T, dt);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "flow"},
           {"steps", traj.times.size() - 1},
           {"T", T},
           {"dt", dt},
           {"max_alpha_residual", traj.max_alpha_residual()},
           {"max_step_residual", traj.max_step_residual()},
           {"max_level_residual", traj.max_level_residual()}};
  json final = json::array();
  for (Eigen::Index i = 0; i < traj.points.back().z.size(); ++i)
    final.push_back(traj.points.back().z[i]);
  doc["final_point"] = final;
  emit(doc, structured);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice-polytope and contact-geometry toolbox"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* check = app.add_subcommand("check", "run polytope predicates");
  std::string check_source;
  std::vector<std::string> require;
  check->add_option("input", check_source, "polytope file or catalog:NAME")
      ->required();
  check->add_option("--require", require,
                    "predicates that must hold (compact|smooth|monotone|even)");

  auto* delzant = app.add_subcommand("delzant", "compute the reduction report");
  std::string delzant_source;
  delzant->add_option("input", delzant_source, "polytope file or catalog:NAME")
      ->required();

  auto* census = app.add_subcommand("census", "enumerate smooth Fano classes");
  std::size_t dim = 2;
  int bound = 1;
  bool stabilize = false;
  census->add_option("--dim", dim, "ambient dimension")->required();
  census->add_option("--bound", bound, "coordinate box bound")->required();
  census->add_flag("--stabilize", stabilize, "also verify bound+1 adds nothing");

  auto* catalog = app.add_subcommand("catalog", "verify built-in entries");
  std::string catalog_name;
  catalog->add_option("--name", catalog_name, "show one entry instead");

  auto* flow = app.add_subcommand("flow", "integrate a contact Hamiltonian flow");
  std::vector<long> gamma;
  std::string hamiltonian = "reeb";
  double T = 1.0, dt = 1e-3;
  std::uint64_t seed = 0;
  flow->add_option("--gamma", gamma, "positive sphere weights")
      ->required()
      ->delimiter(',');
  flow->add_option("--hamiltonian", hamiltonian,
                   "'reeb' or comma-separated moment coefficients");
  flow->add_option("--T", T, "total time");
  flow->add_option("--dt", dt, "step size");
  flow->add_option("--seed", seed, "start point seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool structured = format == "structured";
  try {
    if (*check) return run_check(check_source, require, structured);
    if (*delzant) return run_delzant(delzant_source, structured);
    if (*census) return run_census(dim, bound, stabilize, structured);
    if (*catalog) return run_catalog(catalog_name, structured);
    if (*flow) return run_flow(gamma, hamiltonian, T, dt, seed, structured);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
