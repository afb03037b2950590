#pragma once

#include <functional>
#include <string>

#include "polyharmonia/errors.hpp"
#include "polyharmonia/groups.hpp"
#include "polyharmonia/jet.hpp"

namespace polyharmonia {

inline constexpr int kMaxLaplacianOrder = 4;

/// A complex-valued function on a matrix group admitting jet-valued
/// evaluation. A num_vars = 0 jet matrix recovers the plain value.
struct ScalarField {
  std::function<JetScalar(const JetMatrix&)> eval;
  std::string description;

  JetScalar operator()(const JetMatrix& m) const { return eval(m); }

  Complex value_at(const Matrix& p) const { return eval(jet_constant(p, 0)).value(); }
};

inline ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  return {[fe = f.eval, ge = g.eval](const JetMatrix& m) { return fe(m) + ge(m); },
          "(" + f.description + " + " + g.description + ")"};
}

inline ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  return {[fe = f.eval, ge = g.eval](const JetMatrix& m) { return fe(m) * ge(m); },
          "(" + f.description + ")*(" + g.description + ")"};
}

inline ScalarField operator*(Complex s, const ScalarField& f) {
  return {[s, fe = f.eval](const JetMatrix& m) { return s * fe(m); }, f.description};
}

inline ScalarField constant_field(Complex value) {
  return {[value](const JetMatrix& m) { return JetScalar::constant(value, m.num_vars()); },
          "constant"};
}

/// Laplace-Beltrami (tension) operator in the orthonormal left-invariant
/// frame: sum_i d^2/dt^2 f(p exp(t X_i)) at t = 0. All catalog groups are
/// semisimple, hence unimodular, so no divergence correction enters.
inline Complex laplacian(const ScalarField& f, const AlgebraBasis& basis, const Matrix& p) {
  Complex acc = 0.0;
  for (const Matrix& x : basis.elements) {
    const JetScalar y = f(curve(p, x, 0, 1));
    acc += 2.0 * y.coeff(2);
  }
  return acc;
}

/// Conformality operator kappa(f, g) = g(grad f, grad g), complex-bilinear,
/// as the frame sum of first-derivative products.
inline Complex conformality(const ScalarField& f, const ScalarField& g, const AlgebraBasis& basis,
                            const Matrix& p) {
  Complex acc = 0.0;
  for (const Matrix& x : basis.elements) {
    const JetMatrix j = curve(p, x, 0, 1);
    acc += f(j).coeff(1) * g(j).coeff(1);
  }
  return acc;
}

/// tau^r by expanding over direction tuples with one multivariate jet per
/// tuple. Prefix products p exp(t_0 X_{i_0}) ... are shared down the
/// enumeration tree; the summation order is fixed, so results are
/// deterministic.
inline Complex iterated_laplacian(const ScalarField& f, const AlgebraBasis& basis, const Matrix& p,
                                  int order) {
  if (order < 1) throw std::invalid_argument("iterated_laplacian: order must be positive");
  if (order > kMaxLaplacianOrder)
    throw UnsupportedOrderError("iterated_laplacian: order exceeds ceiling " +
                                std::to_string(kMaxLaplacianOrder));
  Complex total = 0.0;
  const double scale = double(std::size_t(1) << order);  // each d^2/dt^2 contributes 2!
  const std::size_t top = detail::pow3(order) - 1;       // index of t_0^2 ... t_{r-1}^2
  auto recurse = [&](auto&& self, const JetMatrix& q, int depth) -> void {
    if (depth == order) {
      total += scale * f(q).coeff(top);
      return;
    }
    for (const Matrix& x : basis.elements) self(self, mul_curve(q, x, depth), depth + 1);
  };
  recurse(recurse, jet_constant(p, order), 0);
  return total;
}

}  // namespace polyharmonia
