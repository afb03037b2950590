#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

#include "polyharmonia/factory.hpp"
#include "polyharmonia/oracle.hpp"
#include "polyharmonia/report.hpp"

namespace polyharmonia {

/// Desk-size group lists used by `all` and as CLI defaults.
inline std::vector<std::string> default_basis_groups() {
  return {"so:4",    "su:3",    "sp:2",    "slr:3",    "spr:2",    "soo:2,2",
          "soo:3,1", "suu:1,2", "spp:1,1", "sostar:2", "sustar:2", "u:3"};
}

inline std::vector<std::string> default_eigen_groups() {
  return {"so:4",    "su:3",    "sp:2",    "slr:3",    "spr:2",   "soo:2,2",
          "soo:3,1", "suu:1,2", "spp:1,1", "sostar:2", "sustar:2"};
}

/// Generic-case groups first, then the lambda = mu ones.
inline std::vector<std::string> default_harmonic_groups() {
  return {"su:3", "slr:3", "sp:2", "spr:2", "suu:1,2", "sustar:2",
          "sostar:2", "spp:1,1", "soo:3,1"};
}

namespace detail {

inline unsigned worker_count(std::size_t cases) {
  unsigned workers = 0;
  if (const char* env = std::getenv("POLYHARMONIA_THREADS")) workers = unsigned(std::atoi(env));
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return unsigned(std::min<std::size_t>(workers, cases));
}

/// Runs fn(i) for i in [0, count) across workers. Each index owns its output
/// slot, so results are deterministic regardless of scheduling.
template <typename Fn>
void parallel_cases(std::size_t count, Fn&& fn) {
  const unsigned workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Expands the rows selector into (group, row) cases; explicit requests for
/// infeasible rows are config errors, "all" silently keeps feasible ones.
inline std::vector<std::pair<GroupSpec, int>> expand_rows(const CampaignConfig& cfg) {
  std::vector<int> wanted;
  if (cfg.rows != "all") {
    std::size_t pos = 0;
    while (pos < cfg.rows.size()) {
      const std::size_t comma = cfg.rows.find(',', pos);
      const std::string tok = cfg.rows.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
      if (tok != "1" && tok != "2")
        throw std::invalid_argument("rows selector must be 'all' or a list of 1/2, got '" +
                                    cfg.rows + "'");
      wanted.push_back(tok == "1" ? 1 : 2);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  std::vector<std::pair<GroupSpec, int>> cases;
  for (const std::string& text : cfg.groups) {
    const GroupSpec spec = GroupSpec::parse(text);
    for (int row = 1; row <= row_count(spec.family); ++row) {
      const bool requested =
          cfg.rows == "all" || std::find(wanted.begin(), wanted.end(), row) != wanted.end();
      if (!requested) continue;
      if (!row_feasible(spec, row)) {
        if (cfg.rows == "all") continue;
        throw std::invalid_argument("row " + std::to_string(row) + " of " + spec.str() +
                                    " is infeasible (isotropic vector needs dimension >= 2)");
      }
      cases.emplace_back(spec, row);
    }
  }
  if (cases.empty()) throw std::invalid_argument("no verification cases selected");
  return cases;
}

}  // namespace detail

inline Report run_basis_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  Report report{"basis", cfg, detail::utc_timestamp(), {}};
  std::vector<GroupSpec> specs;
  for (const std::string& text : cfg.groups) specs.push_back(GroupSpec::parse(text));
  report.cases.resize(specs.size());
  detail::parallel_cases(specs.size(), [&](std::size_t i) {
    const GroupSpec& spec = specs[i];
    CaseRecord rec;
    rec.kind = "basis";
    rec.group = spec.str();
    const AlgebraBasis basis = algebra_basis(spec);
    rec.dim = basis.dim();
    rec.gram_residual = basis.gram_residual();
    for (const Matrix& x : basis.elements)
      rec.max_exp_membership = std::max(
          rec.max_exp_membership, membership_residual(spec, matrix_exp(Matrix(0.1 * x))));
    const bool ok = rec.gram_residual <= 1e-12 && rec.max_exp_membership <= 1e-8 &&
                    rec.dim == group_dim(spec);
    rec.verdict = ok ? "pass" : "fail";
    report.cases[i] = std::move(rec);
  });
  return report;
}

inline Report run_eigen_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  Report report{"verify-eigen", cfg, detail::utc_timestamp(), {}};
  const auto cases = detail::expand_rows(cfg);
  report.cases.resize(cases.size());
  detail::parallel_cases(cases.size(), [&](std::size_t i) {
    const auto& [spec, row] = cases[i];
    const std::uint64_t case_seed =
        derive_seed(cfg.seed, "eigen|" + spec.str() + "|row" + std::to_string(row));
    CaseRecord rec;
    rec.kind = "eigen";
    rec.group = spec.str();
    rec.row = row;
    EigenFamily fam = gen_params(spec, row, derive_seed(case_seed, "params"));
    fam.lambda += cfg.perturb_lambda;
    rec.lambda = fam.lambda;
    rec.mu = fam.mu;
    rec.family = family_json(fam);
    rec.samples_requested = cfg.samples;
    const EigenVerification v =
        verify_eigen(fam, cfg.samples, derive_seed(case_seed, "points"), cfg.tol.eigen, cfg.scale,
                     cfg.measure_eigenfamily);
    rec.accepted = v.samples;
    rec.residuals_tau = v.residuals_tau;
    rec.residuals_kappa = v.residuals_kappa;
    rec.max_residual_tau = v.max_residual_tau;
    rec.max_residual_kappa = v.max_residual_kappa;
    rec.offdiag_kappa_residual = v.offdiag_kappa_residual;
    rec.verdict = v.passed ? "pass" : "fail";
    report.cases[i] = std::move(rec);
  });
  return report;
}

inline Report run_harmonic_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  Report report{"verify-harmonic", cfg, detail::utc_timestamp(), {}};
  struct HarmonicCase {
    GroupSpec spec;
    int row;
    int order;
    Complex c1, c2;
  };
  std::vector<HarmonicCase> cases;
  for (const auto& [spec, row] : detail::expand_rows(cfg))
    for (int order : cfg.orders)
      for (const auto& [c1, c2] : cfg.constants) cases.push_back({spec, row, order, c1, c2});
  report.cases.resize(cases.size());
  detail::parallel_cases(cases.size(), [&](std::size_t i) {
    const HarmonicCase& hc = cases[i];
    CaseRecord rec;
    rec.kind = "harmonic";
    rec.group = hc.spec.str();
    rec.row = hc.row;
    rec.order = hc.order;
    rec.c1 = hc.c1;
    rec.c2 = hc.c2;
    rec.samples_requested = cfg.samples;
    const std::string tag = "harmonic|" + hc.spec.str() + "|row" + std::to_string(hc.row);
    const EigenFamily fam =
        gen_params(hc.spec, hc.row, derive_seed(derive_seed(cfg.seed, tag), "params"));
    rec.lambda = fam.lambda;
    rec.mu = fam.mu;
    rec.family = family_json(fam);
    try {
      const HarmonicCandidate cand = build_candidate(fam, hc.order, hc.c1, hc.c2);
      rec.case_tag = to_string(cand.holo.kind);
      const std::uint64_t points_seed =
          derive_seed(cfg.seed, tag + "|r" + std::to_string(hc.order));
      const HarmonicVerification v =
          verify_harmonic(cand, cfg.samples, points_seed, cfg.tol.zero_for(hc.order),
                          cfg.tol.nonzero, cfg.tol.margin, cfg.scale);
      rec.accepted = v.accepted;
      rec.zero_residuals = v.zero_residuals;
      rec.properness_values = v.properness_values;
      rec.max_zero_residual = v.max_zero;
      rec.max_properness = v.max_properness;
      rec.properness_fraction = v.properness_fraction;
      rec.verdict = v.passed ? "pass" : "fail";
    } catch (const InconclusiveDomainError& e) {
      rec.verdict = "inconclusive";
      rec.note = e.what();
    }
    report.cases[i] = std::move(rec);
  });
  return report;
}

inline Report run_ode_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  Report report{"ode-check", cfg, detail::utc_timestamp(), {}};
  struct OdeCase {
    std::string label;
    Complex lambda, mu, c1, c2;
    int order;
  };
  std::vector<OdeCase> cases;
  auto push_pair = [&](const std::string& label, Complex lambda, Complex mu) {
    for (int order : cfg.orders)
      for (const auto& [c1, c2] : cfg.constants) {
        // the mu = 0 branch only carries c1; skip degenerate combinations
        if (std::abs(mu) <= 1e-12 && c1 == Complex(0.0)) continue;
        cases.push_back({label, lambda, mu, c1, c2, order});
      }
  };
  for (const auto& [spec, row] : detail::expand_rows(cfg)) {
    const auto [lambda, mu] = eigen_constants(spec, row);
    push_pair(spec.str() + "|row" + std::to_string(row), lambda, mu);
  }
  push_pair("synthetic:mu0", 1.0, 0.0);
  report.cases.resize(cases.size());
  detail::parallel_cases(cases.size(), [&](std::size_t i) {
    const OdeCase& oc = cases[i];
    CaseRecord rec;
    rec.kind = "ode";
    rec.group = oc.label;
    rec.order = oc.order;
    rec.lambda = oc.lambda;
    rec.mu = oc.mu;
    rec.c1 = oc.c1;
    rec.c2 = oc.c2;
    rec.samples_requested = cfg.ode_centers;
    const HolomorphicCase holo = HolomorphicCase::make(oc.lambda, oc.mu, oc.order, oc.c1, oc.c2);
    rec.case_tag = to_string(holo.kind);
    RandomStream rng(derive_seed(cfg.seed, "ode|" + oc.label + "|r" + std::to_string(oc.order)));
    int nonzero = 0;
    for (int k = 0; k < cfg.ode_centers; ++k) {
      const Complex center = random_center(rng);
      const auto [zero_res, properness] = ode_cascade_residual(holo, center, 2 * oc.order + 2);
      rec.max_zero_residual = std::max(rec.max_zero_residual, zero_res);
      rec.max_properness = std::max(rec.max_properness, properness);
      rec.max_abs_f = std::max(rec.max_abs_f, std::abs(eval_holomorphic(holo, center)));
      if (properness > cfg.tol.nonzero) ++nonzero;
    }
    rec.properness_fraction = double(nonzero) / double(cfg.ode_centers);
    rec.verdict = rec.max_zero_residual <= cfg.tol.ode_zero * (1.0 + rec.max_abs_f) &&
                          rec.properness_fraction + 1e-12 >= 0.9
                      ? "pass"
                      : "fail";
    report.cases[i] = std::move(rec);
  });
  return report;
}

/// Full suite: basis + eigen + harmonic + ode over the default desk lists.
inline Report run_all_campaign(const CampaignConfig& base) {
  Report report{"all", base, detail::utc_timestamp(), {}};
  CampaignConfig cfg = base;

  cfg.groups = base.groups.empty() ? default_basis_groups() : base.groups;
  for (CaseRecord& rec : run_basis_campaign(cfg).cases) report.cases.push_back(std::move(rec));

  cfg.groups = base.groups.empty() ? default_eigen_groups() : base.groups;
  cfg.rows = "all";
  for (CaseRecord& rec : run_eigen_campaign(cfg).cases) report.cases.push_back(std::move(rec));

  cfg.groups = base.groups.empty() ? default_harmonic_groups() : base.groups;
  cfg.rows = "1";
  for (CaseRecord& rec : run_harmonic_campaign(cfg).cases) report.cases.push_back(std::move(rec));
  for (CaseRecord& rec : run_ode_campaign(cfg).cases) report.cases.push_back(std::move(rec));

  report.config = base;
  return report;
}

/// Reports land atomically: temp file in the target directory, then rename.
inline void write_report_atomic(const Report& report, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open report path '" + path + "' for writing");
    out << to_json(report).dump(2) << "\n";
    if (!out) throw std::runtime_error("failed while writing report '" + path + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace polyharmonia
