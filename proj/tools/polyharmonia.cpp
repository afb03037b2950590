// polyharmonia: numerical verification campaigns for eigenfunctions and
// proper r-harmonic functions on the classical matrix Lie groups.

#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "polyharmonia/campaign.hpp"

using namespace polyharmonia;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

/// Group lists are comma-separated, but signature groups carry a comma of
/// their own ("soo:3,1"); a bare-number token therefore belongs to the
/// preceding group string.
std::vector<std::string> parse_group_list(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& tok : split(text, ',')) {
    const bool bare_number = !tok.empty() && tok.find(':') == std::string::npos &&
                             tok.find_first_not_of("0123456789") == std::string::npos;
    if (bare_number && !out.empty()) out.back() += "," + tok;
    else out.push_back(tok);
  }
  return out;
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  for (const std::string& tok : split(text, ','))
    out.push_back(std::stoi(tok));
  return out;
}

/// "1,0;0,1" (real pairs) or "1,0,0,1;..." (re/im quadruples).
std::vector<std::pair<Complex, Complex>> parse_constants(const std::string& text) {
  std::vector<std::pair<Complex, Complex>> out;
  for (const std::string& pair_text : split(text, ';')) {
    const auto nums = split(pair_text, ',');
    std::vector<double> vals;
    for (const std::string& tok : nums) vals.push_back(std::stod(tok));
    if (vals.size() == 2) out.push_back({Complex(vals[0]), Complex(vals[1])});
    else if (vals.size() == 4)
      out.push_back({Complex(vals[0], vals[1]), Complex(vals[2], vals[3])});
    else
      throw std::invalid_argument("constants: expected 'c1,c2' or 'c1re,c1im,c2re,c2im' per pair");
  }
  if (out.empty()) throw std::invalid_argument("constants: empty list");
  return out;
}

void print_summary(const Report& report) {
  for (const CaseRecord& c : report.cases) {
    std::printf("[%s] %s %s", c.verdict.c_str(), c.kind.c_str(), c.group.c_str());
    if (c.row > 0) std::printf(" row=%d", c.row);
    if (c.order > 0) std::printf(" r=%d", c.order);
    if (!c.case_tag.empty()) std::printf(" case=%s", c.case_tag.c_str());
    if (c.kind == "eigen")
      std::printf(" e_tau=%.3e e_kappa=%.3e", c.max_residual_tau, c.max_residual_kappa);
    else if (c.kind == "harmonic")
      std::printf(" accepted=%d zero=%.3e properness=%.3e fraction=%.2f", c.accepted,
                  c.max_zero_residual, c.max_properness, c.properness_fraction);
    else if (c.kind == "ode")
      std::printf(" zero=%.3e fraction=%.2f", c.max_zero_residual, c.properness_fraction);
    else if (c.kind == "basis")
      std::printf(" dim=%d gram=%.3e exp_membership=%.3e", c.dim, c.gram_residual,
                  c.max_exp_membership);
    if (!c.note.empty()) std::printf(" note=%s", c.note.c_str());
    std::printf("\n");
  }
  std::printf("overall: %s (%zu cases)\n", report.overall_verdict().c_str(),
              report.cases.size());
}

int finish(const Report& report, bool quiet = false) {
  if (!quiet) print_summary(report);
  if (!report.config.output.empty()) write_report_atomic(report, report.config.output);
  return exit_code_for(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of eigenfunctions and proper r-harmonic functions "
               "on classical matrix Lie groups"};
  app.require_subcommand(1);

  std::string groups_arg, rows_arg, orders_arg = "1,2,3", constants_arg, out_arg;
  std::vector<std::string> basis_groups;
  int samples = 20, centers = 100;
  std::uint64_t seed = 42;
  double scale = 0.3, tol_eigen = 1e-8, tol_nonzero = 1e-6, margin = 1e-6;
  double perturb_lambda = 0.0;
  bool measure_eigenfamily = false;

  auto* basis_cmd = app.add_subcommand("basis", "print dimension and Gram residual of a group's "
                                                "orthonormal Lie-algebra basis");
  basis_cmd->add_option("group", basis_groups, "group strings, e.g. so:4 suu:1,2")->required();
  basis_cmd->add_option("--out", out_arg, "write a JSON report");

  auto add_campaign_flags = [&](CLI::App* cmd, bool with_rows) {
    cmd->add_option("--groups", groups_arg, "comma-separated group strings");
    if (with_rows) cmd->add_option("--rows", rows_arg, "'all' or comma list of 1/2");
    cmd->add_option("--samples", samples, "points per case");
    cmd->add_option("--seed", seed, "campaign seed");
    cmd->add_option("--scale", scale, "sampling scale for exp(sum c_i X_i)");
    cmd->add_option("--out", out_arg, "write the JSON report here (atomic)");
  };

  auto* eigen_cmd = app.add_subcommand("verify-eigen", "verify tau(phi) = lambda phi and "
                                                       "kappa(phi,phi) = mu phi^2 per catalog row");
  add_campaign_flags(eigen_cmd, true);
  eigen_cmd->add_option("--tol", tol_eigen, "relative residual tolerance");
  eigen_cmd->add_option("--perturb-lambda", perturb_lambda,
                        "self-test knob: offset lambda to force a failing campaign");
  eigen_cmd->add_flag("--measure-eigenfamily", measure_eigenfamily,
                      "also measure the pairwise kappa(phi,psi) = mu phi psi residual "
                      "(informational only)");

  auto* harmonic_cmd = app.add_subcommand("verify-harmonic",
                                          "verify tau^r(Phi_r) = 0 and properness for the "
                                          "constructed candidates");
  add_campaign_flags(harmonic_cmd, true);
  harmonic_cmd->add_option("--orders", orders_arg, "comma list of r values, subset of 1..4");
  harmonic_cmd->add_option("--constants", constants_arg,
                           "semicolon-separated (c1,c2) pairs, real or re/im quadruples");
  harmonic_cmd->add_option("--margin", margin, "branch-cut safety margin for the domain W");
  harmonic_cmd->add_option("--tol-nonzero", tol_nonzero, "properness threshold");

  auto* ode_cmd = app.add_subcommand("ode-check", "independent ODE-oracle sweep: L^r f_r = 0 "
                                                  "and L^(r-1) f_r != 0 at random centers");
  add_campaign_flags(ode_cmd, true);
  ode_cmd->add_option("--orders", orders_arg, "comma list of r values");
  ode_cmd->add_option("--constants", constants_arg, "constant pairs, as for verify-harmonic");
  ode_cmd->add_option("--centers", centers, "expansion centers per case");

  auto* all_cmd = app.add_subcommand("all", "full verification suite over the desk-size groups");
  add_campaign_flags(all_cmd, false);
  all_cmd->add_option("--orders", orders_arg, "comma list of r values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    CampaignConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.scale = scale;
    cfg.tol.eigen = tol_eigen;
    cfg.tol.nonzero = tol_nonzero;
    cfg.tol.margin = margin;
    cfg.ode_centers = centers;
    cfg.output = out_arg;
    cfg.perturb_lambda = perturb_lambda;
    cfg.measure_eigenfamily = measure_eigenfamily;
    if (!orders_arg.empty()) cfg.orders = parse_orders(orders_arg);
    if (!constants_arg.empty()) cfg.constants = parse_constants(constants_arg);
    if (!groups_arg.empty()) cfg.groups = parse_group_list(groups_arg);

    if (basis_cmd->parsed()) {
      cfg.groups = basis_groups;
      const Report report = run_basis_campaign(cfg);
      for (const CaseRecord& c : report.cases) {
        if (report.cases.size() > 1) std::printf("%s: ", c.group.c_str());
        if (c.gram_residual <= 1e-12) std::printf("dim=%d gram_residual<=1e-12\n", c.dim);
        else std::printf("dim=%d gram_residual=%.3e\n", c.dim, c.gram_residual);
      }
      if (!cfg.output.empty()) write_report_atomic(report, cfg.output);
      return exit_code_for(report);
    }
    if (eigen_cmd->parsed()) {
      if (cfg.groups.empty()) cfg.groups = default_eigen_groups();
      cfg.rows = rows_arg.empty() ? "all" : rows_arg;
      return finish(run_eigen_campaign(cfg));
    }
    if (harmonic_cmd->parsed()) {
      if (cfg.groups.empty()) cfg.groups = default_harmonic_groups();
      cfg.rows = rows_arg.empty() ? "1" : rows_arg;
      return finish(run_harmonic_campaign(cfg));
    }
    if (ode_cmd->parsed()) {
      if (cfg.groups.empty()) cfg.groups = default_harmonic_groups();
      cfg.rows = rows_arg.empty() ? "1" : rows_arg;
      return finish(run_ode_campaign(cfg));
    }
    // all
    return finish(run_all_campaign(cfg));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
