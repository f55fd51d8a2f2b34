// s1c: solve, sweep and verify S^1-symmetric constraint data from a config file.
//
// Exit codes: 0 success, 1 configuration error, 2 non-convergence,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "s1c/s1c.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace s1c;

namespace {

constexpr int kOk = 0, kConfigError = 1, kNoConvergence = 2, kVerifyFailed = 3;

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_config(ss.str());
  apply_env_overrides(c);
  return c;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

// Leading-order constants of the unit-amplitude seed U:
// alpha ~ (1/4pi) int (Udot^2 + |grad U|^2) a^2, (p, q) ~ (1/pi) int Udot grad U a^2,
// with the alternative normalization 1/2 int(...) and 4/(1+2pi) int(...) alongside.
struct LeadingConstants {
  double energy = 0.0, flux1 = 0.0, flux2 = 0.0;
};

LeadingConstants leading_constants(const SeedData& unit) {
  LeadingConstants L;
  L.energy = unit.epsilon;
  auto [u1, u2] = cartesian_gradient(unit.u);
  L.flux1 = integrate(multiply(unit.udot, u1));
  L.flux2 = integrate(multiply(unit.udot, u2));
  return L;
}

json constants_json(const LeadingConstants& L) {
  const double pi = std::numbers::pi;
  return {{"alpha_over_a2", L.energy / (4.0 * pi)},
          {"p_over_a2", L.flux1 / pi},
          {"q_over_a2", L.flux2 / pi},
          {"literal_convention",
           {{"alpha_over_a2", 0.5 * L.energy},
            {"p_over_a2", 4.0 / (1.0 + 2.0 * pi) * L.flux1},
            {"q_over_a2", 4.0 / (1.0 + 2.0 * pi) * L.flux2},
            {"note", "1/2 int and 4/(1+2pi) int normalization, which omits the 1/(2pi) of the planar Green function; for comparison only"}}}};
}

json bundle_json(const SolutionBundle& B, const SeedData& seed, const RunConfig& c) {
  json j;
  j["status"] = B.failure ? to_string(*B.failure) : "Converged";
  j["converged"] = B.converged;
  if (!B.message.empty()) j["message"] = B.message;
  j["alpha"] = B.alpha;
  j["rho"] = B.rho;
  j["eta"] = B.eta;
  j["p"] = B.p;
  j["q"] = B.q;
  j["b"] = seed.b;
  j["epsilon"] = seed.epsilon;
  try {
    j["cone_angle"] = cone_angle(B.alpha);
  } catch (const Error&) {
    j["cone_angle"] = nullptr;
  }
  j["iterations"] = B.iterations;
  j["contraction_ratios"] = B.contraction_ratios;
  j["iterate_differences"] = B.differences;
  j["selection_condition_number"] = B.selection_cond;
  j["residuals"] = {{"momentum_residual_norm", B.residuals.momentum_residual_norm},
                    {"hamiltonian_residual_norm", B.residuals.hamiltonian_residual_norm},
                    {"pointwise_max_momentum", B.residuals.pointwise_max_momentum},
                    {"pointwise_max_hamiltonian", B.residuals.pointwise_max_hamiltonian}};
  j["grid"] = {{"K", c.K}, {"N_r", c.N_r}, {"R_max", c.R_max}, {"delta", c.delta}};
  return j;
}

int cmd_solve(const std::string& path) {
  RunConfig c;
  GridPtr g;
  SeedData seed;
  try {
    c = load_config(path);
    g = grid_of(c);
    seed = seed_of(c, g);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  SolutionBundle B;
  try {
    B = run_constraints(seed, c.solver);
  } catch (const Error& e) {
    std::cerr << "solve refused: " << e.what() << '\n';
    write_json(out / "solution.json", {{"status", to_string(e.kind())}, {"converged", false}, {"message", e.what()},
                                       {"epsilon", seed.epsilon}, {"b", seed.b}});
    return kNoConvergence;
  }
  write_json(out / "solution.json", bundle_json(B, seed, c));
  write_field_csv((out / "lambda_tilde.csv").string(), B.lambda_tilde);
  write_field_csv((out / "H_tilde_11.csv").string(), B.H_tilde.h11);
  write_field_csv((out / "H_tilde_12.csv").string(), B.H_tilde.h12);
  write_field_csv((out / "tau_rescaled.csv").string(), tau_rescaled(B, seed));
  std::printf("alpha = %.12g  rho = %.12g  eta = %.12g  iterations = %d  status = %s\n", B.alpha, B.rho, B.eta,
              B.iterations, B.failure ? to_string(*B.failure) : "Converged");
  return B.converged ? kOk : kNoConvergence;
}

std::vector<double> parse_amplitudes(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (detail::trim(item).empty()) continue;
    out.push_back(detail::to_real(item, 0));
  }
  return out;
}

int cmd_sweep(const std::string& path, const std::string& amps_text) {
  RunConfig c;
  GridPtr g;
  std::vector<double> amps;
  SeedData unit;
  try {
    c = load_config(path);
    g = grid_of(c);
    amps = parse_amplitudes(amps_text);
    if (amps.empty()) throw Error(ErrorKind::ValidationError, "amplitude list is empty");
    for (size_t i = 0; i < amps.size(); ++i) {
      if (!(amps[i] >= 0.0)) throw Error(ErrorKind::ValidationError, "amplitudes must be non-negative");
      if (i > 0 && amps[i] < amps[i - 1]) throw Error(ErrorKind::ValidationError, "amplitudes must be sorted");
    }
    unit = seed_of(c, g, 1.0);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  std::ofstream csv(out / "sweep.csv");
  csv << "a,alpha,p,q,momentum_residual,hamiltonian_residual,iterations,status,alpha_over_a2,p_over_a2,q_over_a2\n";
  struct Row {
    double a, ya, yp, yq;
    bool ok;
  };
  std::vector<Row> rows;
  bool all_ok = true;
  for (double a : amps) {
    SolutionBundle B;
    std::string status = "Converged";
    try {
      B = run_constraints(seed_of(c, g, a), c.solver);
      if (B.failure) status = to_string(*B.failure);
    } catch (const Error& e) {
      status = to_string(e.kind());
    }
    const bool ok = status == "Converged";
    all_ok = all_ok && ok;
    const double s = a > 0.0 ? 1.0 / (a * a) : 0.0;
    const Row r{a, B.alpha * s, B.p * s, B.q * s, ok};
    rows.push_back(r);
    csv << fmt_real(a) << ',' << fmt_real(B.alpha) << ',' << fmt_real(B.p) << ',' << fmt_real(B.q) << ','
        << fmt_real(B.residuals.momentum_residual_norm) << ',' << fmt_real(B.residuals.hamiltonian_residual_norm)
        << ',' << B.iterations << ',' << status << ',' << fmt_real(r.ya) << ',' << fmt_real(r.yp) << ','
        << fmt_real(r.yq) << '\n';
    std::printf("a = %-10g alpha = %-14.8g p = %-14.8g q = %-14.8g %s\n", a, B.alpha, B.p, B.q, status.c_str());
  }

  // X(a)/a^2 = c0 + c1 a^2: extrapolate from the two smallest positive rows.
  json fit;
  fit["derived_constants"] = constants_json(leading_constants(unit));
  std::vector<Row> pos;
  for (const auto& r : rows)
    if (r.ok && r.a > 0.0) pos.push_back(r);
  if (pos.size() >= 2) {
    const auto& r1 = pos[0];
    const auto& r2 = pos[1];
    const double a1 = r1.a * r1.a, a2 = r2.a * r2.a;
    auto extrap = [&](double y1, double y2) { return (a2 * y1 - a1 * y2) / (a2 - a1); };
    const double ca = extrap(r1.ya, r2.ya), cp = extrap(r1.yp, r2.yp), cq = extrap(r1.yq, r2.yq);
    fit["richardson"] = {{"alpha_over_a2", ca},
                         {"p_over_a2", cp},
                         {"q_over_a2", cq},
                         {"remainder_alpha", std::abs(r1.ya - ca)},
                         {"remainder_p", std::abs(r1.yp - cp)},
                         {"remainder_q", std::abs(r1.yq - cq)},
                         {"from_amplitudes", {r1.a, r2.a}}};
  }
  write_json(out / "sweep_fit.json", fit);
  return all_ok ? kOk : kNoConvergence;
}

int cmd_verify(const std::string& path) {
  RunConfig c;
  try {
    c = load_config(path);
    grid_of(c);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const auto rep = run_verification(c.K, c.N_r, c.R_max, c.delta);
  json j;
  j["all_passed"] = rep.all_passed();
  j["checks"] = json::array();
  for (const auto& ck : rep.checks) {
    j["checks"].push_back({{"name", ck.name},
                           {"value", ck.value},
                           {"tolerance", ck.tolerance},
                           {"passed", ck.passed},
                           {"detail", ck.detail}});
    std::printf("%-4s %-40s %.3e (tol %.1e)\n", ck.passed ? "ok" : "FAIL", ck.name.c_str(), ck.value, ck.tolerance);
  }
  j["warnings"] = rep.warnings;
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  write_json(out / "verify.json", j);
  return rep.all_passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S1-symmetric Einstein constraint solver"};
  app.require_subcommand(1);
  std::string config, amplitudes;

  auto* solve = app.add_subcommand("solve", "solve the constraint system for a config");
  solve->add_option("config", config, "config file")->required();
  auto* sweep = app.add_subcommand("sweep", "solve over a list of seed amplitudes");
  sweep->add_option("config", config, "config file")->required();
  sweep->add_option("--amplitudes", amplitudes, "comma-separated amplitudes")->required();
  auto* verify = app.add_subcommand("verify", "run the identity and oracle checks");
  verify->add_option("config", config, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  try {
    if (*solve) return cmd_solve(config);
    if (*sweep) return cmd_sweep(config, amplitudes);
    if (*verify) return cmd_verify(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::IoError ? kConfigError : kNoConvergence;
  }
  return kConfigError;
}
