#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyharmonia/catalog.hpp"
#include "polyharmonia/version.hpp"

namespace polyharmonia {

using Json = nlohmann::ordered_json;

struct Tolerances {
  double eigen = 1e-8;
  std::array<double, 4> zero{1e-8, 1e-7, 1e-6, 1e-5};  // indexed by r-1
  double nonzero = 1e-6;
  double margin = 1e-6;
  double ode_zero = 1e-9;

  double zero_for(int order) const { return zero.at(std::size_t(order) - 1); }
};

struct CampaignConfig {
  std::vector<std::string> groups;
  std::string rows = "all";
  std::vector<int> orders{1, 2, 3};
  int samples = 20;
  std::uint64_t seed = 42;
  double scale = 0.3;
  Tolerances tol;
  std::vector<std::pair<Complex, Complex>> constants{{1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
  std::string output;
  int ode_centers = 100;
  double perturb_lambda = 0.0;
  bool measure_eigenfamily = false;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (orders.empty()) throw std::invalid_argument("config: at least one order required");
    for (int r : orders)
      if (r < 1 || r > kMaxLaplacianOrder)
        throw std::invalid_argument("config: orders must lie in {1, ..., 4}");
    if (tol.eigen <= 0 || tol.nonzero <= 0 || tol.margin <= 0 || tol.ode_zero <= 0)
      throw std::invalid_argument("config: tolerances must be positive");
    for (double z : tol.zero)
      if (z <= 0) throw std::invalid_argument("config: tolerances must be positive");
    if (ode_centers < 1) throw std::invalid_argument("config: ode centers must be >= 1");
  }
};

/// One campaign case outcome; which fields are meaningful depends on kind
/// ("basis" | "eigen" | "harmonic" | "ode").
struct CaseRecord {
  std::string kind;
  std::string group;  // group string, or (lambda, mu) label for ode cases
  int row = 0;
  int order = 0;
  std::string case_tag;  // solution branch for harmonic/ode cases
  Complex lambda{}, mu{}, c1{}, c2{};
  Json family;  // serialized parameters (eigen/harmonic)

  int samples_requested = 0;
  int accepted = 0;
  std::vector<double> residuals_tau, residuals_kappa;      // eigen
  double max_residual_tau = 0.0, max_residual_kappa = 0.0; // eigen
  double offdiag_kappa_residual = -1.0;                    // eigen, exploratory
  std::vector<double> zero_residuals, properness_values;   // harmonic
  double max_zero_residual = 0.0, max_properness = 0.0;    // harmonic/ode
  double properness_fraction = 0.0;                        // harmonic/ode
  double max_abs_f = 0.0;                                  // ode
  int dim = 0;                                             // basis
  double gram_residual = 0.0, max_exp_membership = 0.0;    // basis

  std::string verdict = "pass";  // "pass" | "fail" | "inconclusive"
  std::string note;
};

struct Report {
  std::string kind;  // subcommand name
  CampaignConfig config;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<CaseRecord> cases;

  std::string overall_verdict() const {
    bool inconclusive = false;
    for (const CaseRecord& c : cases) {
      if (c.verdict == "fail") return "fail";
      if (c.verdict == "inconclusive") inconclusive = true;
    }
    return inconclusive ? "inconclusive" : "pass";
  }
};

/// Exit codes are a pure function of the verdicts: 0 pass, 2 fail,
/// 3 inconclusive.
inline int exit_code_for(const Report& report) {
  const std::string verdict = report.overall_verdict();
  if (verdict == "pass") return 0;
  if (verdict == "fail") return 2;
  return 3;
}

namespace detail {

inline double finite_or_huge(double v) { return std::isfinite(v) ? v : 1.0e308; }

inline Json complex_json(Complex z) {
  return Json::array({finite_or_huge(z.real()), finite_or_huge(z.imag())});
}

inline Json vector_json(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(finite_or_huge(x));
  return out;
}

inline Json row_vector_json(const Eigen::RowVectorXcd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

inline Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

}  // namespace detail

/// Plain-text family record embedded in reports: group string, row tag,
/// parameter arrays as re/im pairs and the constants.
inline Json family_json(const EigenFamily& fam) {
  Json out;
  out["group"] = fam.spec.str();
  out["row"] = fam.row;
  if (fam.a.size() > 0) out["a"] = detail::row_vector_json(fam.a);
  if (fam.v.size() > 0) out["v"] = detail::row_vector_json(fam.v);
  if (fam.u.size() > 0) out["u"] = detail::row_vector_json(fam.u);
  if (fam.A.size() > 0) out["A"] = detail::matrix_json(fam.A);
  if (fam.B.size() > 0) out["B"] = detail::matrix_json(fam.B);
  out["lambda"] = detail::complex_json(fam.lambda);
  out["mu"] = detail::complex_json(fam.mu);
  return out;
}

inline Json to_json(const CaseRecord& c) {
  Json out;
  out["kind"] = c.kind;
  out["group"] = c.group;
  if (c.row > 0) out["row"] = c.row;
  if (c.order > 0) out["r"] = c.order;
  if (!c.case_tag.empty()) out["case"] = c.case_tag;
  if (c.kind != "basis") {
    out["lambda"] = detail::complex_json(c.lambda);
    out["mu"] = detail::complex_json(c.mu);
  }
  if (c.kind == "harmonic" || c.kind == "ode") {
    out["c1"] = detail::complex_json(c.c1);
    out["c2"] = detail::complex_json(c.c2);
  }
  if (!c.family.is_null()) out["family"] = c.family;
  if (c.kind == "eigen") {
    out["samples"] = c.samples_requested;
    out["residuals_tau"] = detail::vector_json(c.residuals_tau);
    out["residuals_kappa"] = detail::vector_json(c.residuals_kappa);
    out["max_residual_tau"] = detail::finite_or_huge(c.max_residual_tau);
    out["max_residual_kappa"] = detail::finite_or_huge(c.max_residual_kappa);
    if (c.offdiag_kappa_residual >= 0.0)
      out["offdiag_kappa_residual"] = detail::finite_or_huge(c.offdiag_kappa_residual);
  } else if (c.kind == "harmonic") {
    out["samples_requested"] = c.samples_requested;
    out["accepted_points"] = c.accepted;
    out["zero_residuals"] = detail::vector_json(c.zero_residuals);
    out["properness_values"] = detail::vector_json(c.properness_values);
    out["max_zero_residual"] = detail::finite_or_huge(c.max_zero_residual);
    out["max_properness"] = detail::finite_or_huge(c.max_properness);
    out["properness_fraction"] = detail::finite_or_huge(c.properness_fraction);
  } else if (c.kind == "ode") {
    out["centers"] = c.samples_requested;
    out["max_zero_residual"] = detail::finite_or_huge(c.max_zero_residual);
    out["max_abs_f"] = detail::finite_or_huge(c.max_abs_f);
    out["properness_fraction"] = detail::finite_or_huge(c.properness_fraction);
  } else if (c.kind == "basis") {
    out["dim"] = c.dim;
    out["gram_residual"] = detail::finite_or_huge(c.gram_residual);
    out["max_exp_membership"] = detail::finite_or_huge(c.max_exp_membership);
  }
  out["verdict"] = c.verdict;
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

inline Json to_json(const CampaignConfig& cfg) {
  Json out;
  out["groups"] = cfg.groups;
  out["rows"] = cfg.rows;
  out["orders"] = cfg.orders;
  out["samples"] = cfg.samples;
  out["seed"] = cfg.seed;
  out["scale"] = cfg.scale;
  Json tol;
  tol["eigen"] = cfg.tol.eigen;
  tol["zero"] = cfg.tol.zero;
  tol["nonzero"] = cfg.tol.nonzero;
  tol["margin"] = cfg.tol.margin;
  tol["ode_zero"] = cfg.tol.ode_zero;
  out["tolerances"] = tol;
  Json consts = Json::array();
  for (const auto& [c1, c2] : cfg.constants)
    consts.push_back(Json::array(
        {c1.real(), c1.imag(), c2.real(), c2.imag()}));
  out["constants"] = consts;
  out["output"] = cfg.output;
  out["ode_centers"] = cfg.ode_centers;
  if (cfg.perturb_lambda != 0.0) out["perturb_lambda"] = cfg.perturb_lambda;
  if (cfg.measure_eigenfamily) out["measure_eigenfamily"] = true;
  return out;
}

inline Json to_json(const Report& report) {
  Json out;
  out["schema"] = kReportSchema;
  out["kind"] = report.kind;
  out["config"] = to_json(report.config);
  Json env;
  env["version"] = kVersion;
  env["timestamp"] = report.timestamp;
  out["environment"] = env;
  Json cases = Json::array();
  for (const CaseRecord& c : report.cases) cases.push_back(to_json(c));
  out["cases"] = cases;
  out["overall_verdict"] = report.overall_verdict();
  return out;
}

}  // namespace polyharmonia
