#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyharmonia/calculus.hpp"
#include "polyharmonia/catalog.hpp"
#include "polyharmonia/errors.hpp"

namespace polyharmonia {

/// The three solution branches of the order-r harmonicity ODE
/// mu z^2 f'' + lambda z f' = (cascade), solved on the slit plane.
enum class SolutionCase { MuZero, LambdaEqMu, Generic };

inline const char* to_string(SolutionCase c) {
  switch (c) {
    case SolutionCase::MuZero: return "mu_zero";
    case SolutionCase::LambdaEqMu: return "lambda_eq_mu";
    case SolutionCase::Generic: return "generic";
  }
  return "?";
}

struct HolomorphicCase {
  SolutionCase kind = SolutionCase::Generic;
  int order = 1;  // r
  Complex c1{}, c2{}, lambda{}, mu{};

  /// Classifies (lambda, mu) and validates the constants. The catalog
  /// constants are exact rationals, so near-equality at 1e-12 is exact
  /// equality in practice.
  static HolomorphicCase make(Complex lambda, Complex mu, int order, Complex c1, Complex c2) {
    constexpr double kEqTol = 1e-12;
    if (order < 1) throw std::invalid_argument("holomorphic case: order must be >= 1");
    if (c1 == Complex(0.0) && c2 == Complex(0.0))
      throw std::invalid_argument("holomorphic case: (c1, c2) must not both vanish");
    const bool mu_zero = std::abs(mu) <= kEqTol;
    const bool lambda_zero = std::abs(lambda) <= kEqTol;
    HolomorphicCase h;
    h.order = order;
    h.c1 = c1;
    h.c2 = c2;
    h.lambda = lambda;
    h.mu = mu;
    if (mu_zero && lambda_zero)
      throw std::invalid_argument("holomorphic case: no solution branch for lambda = mu = 0");
    if (mu_zero) {
      if (order >= 2 && c1 == Complex(0.0))
        throw std::invalid_argument("holomorphic case: mu = 0 branch needs c1 != 0 for order >= 2");
      h.kind = SolutionCase::MuZero;
    } else if (std::abs(lambda - mu) <= kEqTol) {
      h.kind = SolutionCase::LambdaEqMu;
    } else {
      h.kind = SolutionCase::Generic;
    }
    return h;
  }
};

// Branch-checked holomorphic primitives, overloaded per analytic scalar type
// so one evaluator serves jets, plain complex values and (in the oracle
// module) univariate Taylor series.

inline Complex holo_log(Complex z) {
  if (detail::on_branch_cut(z))
    throw EvaluationDomainError("log: value on the branch cut (-inf, 0]");
  return std::log(z);
}
inline Complex holo_pow(Complex z, Complex alpha) { return std::exp(alpha * holo_log(z)); }
inline Complex holo_one(const Complex&) { return Complex(1.0); }

inline JetScalar holo_log(const JetScalar& j) { return log(j); }
inline JetScalar holo_pow(const JetScalar& j, Complex alpha) { return pow(j, alpha); }
inline JetScalar holo_one(const JetScalar& j) { return JetScalar::constant(1.0, j.num_vars()); }

namespace detail {

template <typename Scalar>
Scalar integer_power(const Scalar& base, int k, const Scalar& one) {
  Scalar acc = one;
  for (int i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

}  // namespace detail

/// The order-r solution f_r, evaluable on any analytic scalar whose value lies
/// off the cut:
///   mu = 0, lambda != 0:   c1 log(z)^(r-1)
///   mu != 0, lambda = mu:  c1 log(z)^(2r-1) + c2 log(z)^(2r-2)
///   mu != 0, lambda != mu: c1 z^(1-lambda/mu) log(z)^(r-1) + c2 log(z)^(r-1)
template <typename Scalar>
Scalar eval_holomorphic(const HolomorphicCase& h, const Scalar& z) {
  const Scalar one = holo_one(z);
  switch (h.kind) {
    case SolutionCase::MuZero: {
      const Scalar lg = holo_log(z);
      return h.c1 * detail::integer_power(lg, h.order - 1, one);
    }
    case SolutionCase::LambdaEqMu: {
      const Scalar lg = holo_log(z);
      return h.c1 * detail::integer_power(lg, 2 * h.order - 1, one) +
             h.c2 * detail::integer_power(lg, 2 * h.order - 2, one);
    }
    case SolutionCase::Generic: {
      const Scalar lg = holo_log(z);
      const Scalar lg_pow = detail::integer_power(lg, h.order - 1, one);
      const Complex exponent = Complex(1.0) - h.lambda / h.mu;
      return h.c1 * (holo_pow(z, exponent) * lg_pow) + h.c2 * lg_pow;
    }
  }
  throw std::logic_error("eval_holomorphic: unreachable");
}

/// Distance from z to the ray (-inf, 0].
inline double distance_to_cut(Complex z) {
  return z.real() >= 0.0 ? std::abs(z) : std::abs(z.imag());
}

inline bool in_slit_domain(Complex value, double margin) {
  return distance_to_cut(value) > margin;
}

/// Whether p lies in W = { x : phi(x) not in (-inf, 0] }, with a safety
/// margin around the cut.
inline bool in_domain(const EigenFamily& fam, const Matrix& p, double margin) {
  return in_slit_domain(make_eigenfunction(fam).value_at(p), margin);
}

/// An eigenfunction composed with a solution-branch holomorphic function,
/// restricted to the domain W.
struct HarmonicCandidate {
  EigenFamily family;
  HolomorphicCase holo;

  /// Phi_r = f_r o phi; evaluation raises EvaluationDomainError off W.
  ScalarField field() const {
    const ScalarField phi = make_eigenfunction(family);
    const HolomorphicCase h = holo;
    return {[phi, h](const JetMatrix& m) { return eval_holomorphic(h, phi(m)); },
            std::string("Phi_") + std::to_string(h.order) + " (" + to_string(h.kind) + ") on " +
                phi.description};
  }
};

inline HarmonicCandidate build_candidate(const EigenFamily& fam, int order, Complex c1, Complex c2) {
  return {fam, HolomorphicCase::make(fam.lambda, fam.mu, order, c1, c2)};
}

struct HarmonicVerification {
  int requested = 0;
  int accepted = 0;
  std::vector<double> zero_residuals;     // |tau^r Phi| per accepted point
  std::vector<double> properness_values;  // |tau^(r-1) Phi| per accepted point
  double max_zero = 0.0;
  double max_properness = 0.0;
  double properness_fraction = 0.0;
  bool passed = false;
};

/// Core sampling loop shared by the constructed candidates and by negative
/// controls that test an arbitrary field for r-harmonicity.
inline HarmonicVerification verify_harmonic_field(const ScalarField& big_phi,
                                                  const EigenFamily& fam,
                                                  const AlgebraBasis& basis, int order,
                                                  int n_samples, std::uint64_t seed,
                                                  double tol_zero, double tol_nonzero,
                                                  double margin = 1e-6, double scale = 0.3) {
  const ScalarField phi = make_eigenfunction(fam);
  HarmonicVerification out;
  out.requested = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const std::uint64_t point_seed = derive_seed(seed, std::uint64_t(i));
    for (int retry = 0; retry < 100; ++retry) {
      const Matrix p = random_point(basis, derive_seed(point_seed, std::uint64_t(retry)), scale);
      if (!in_slit_domain(phi.value_at(p), margin)) continue;
      double zero_res, prop_val;
      try {
        zero_res = std::abs(iterated_laplacian(big_phi, basis, p, order));
        prop_val = order == 1 ? std::abs(big_phi.value_at(p))
                              : std::abs(iterated_laplacian(big_phi, basis, p, order - 1));
      } catch (const EvaluationDomainError&) {
        continue;  // W is open and dense; discard and resample
      }
      out.zero_residuals.push_back(zero_res);
      out.properness_values.push_back(prop_val);
      break;
    }
  }
  out.accepted = int(out.zero_residuals.size());
  if (out.accepted * 2 < n_samples)
    throw InconclusiveDomainError("verify_harmonic: only " + std::to_string(out.accepted) + " of " +
                                  std::to_string(n_samples) + " points landed in the domain W");
  int nonzero = 0;
  for (int i = 0; i < out.accepted; ++i) {
    out.max_zero = std::max(out.max_zero, out.zero_residuals[i]);
    out.max_properness = std::max(out.max_properness, out.properness_values[i]);
    if (out.properness_values[i] > tol_nonzero) ++nonzero;
  }
  out.properness_fraction = double(nonzero) / double(out.accepted);
  out.passed = out.max_zero <= tol_zero * (1.0 + out.max_properness) &&
               out.properness_fraction + 1e-12 >= 0.9;
  return out;
}

inline HarmonicVerification verify_harmonic(const HarmonicCandidate& cand, int n_samples,
                                            std::uint64_t seed, double tol_zero,
                                            double tol_nonzero, double margin = 1e-6,
                                            double scale = 0.3) {
  return verify_harmonic_field(cand.field(), cand.family, algebra_basis(cand.family.spec),
                               cand.holo.order, n_samples, seed, tol_zero, tol_nonzero, margin,
                               scale);
}

}  // namespace polyharmonia
