#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyharmonia/calculus.hpp"
#include "polyharmonia/factory.hpp"

namespace polyharmonia {

/// Univariate truncated Taylor series about a center off the cut. This is
/// the oracle-side analogue of the jets: deliberately a separate type with
/// classical convolution recurrences, decoupled from the multivariate engine
/// it cross-checks.
class TaylorSeries {
 public:
  TaylorSeries(Complex center, std::vector<Complex> coeffs)
      : center_(center), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("taylor series: needs at least the constant term");
  }

  static TaylorSeries constant(Complex value, Complex center, int order) {
    std::vector<Complex> c(std::size_t(order) + 1, Complex(0.0));
    c[0] = value;
    return {center, std::move(c)};
  }

  /// The series of z itself: center + u.
  static TaylorSeries variable(Complex center, int order) {
    TaylorSeries t = constant(center, center, order);
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return int(c_.size()) - 1; }
  Complex center() const { return center_; }
  Complex value() const { return c_[0]; }
  Complex coeff(int k) const { return c_.at(std::size_t(k)); }

  TaylorSeries& operator+=(const TaylorSeries& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
  TaylorSeries& operator-=(const TaylorSeries& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
  friend TaylorSeries operator*(TaylorSeries a, Complex s) {
    for (auto& c : a.c_) c *= s;
    return a;
  }
  friend TaylorSeries operator*(Complex s, TaylorSeries a) { return std::move(a) * s; }

  friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    a.check_same(b);
    TaylorSeries out = constant(0.0, a.center_, a.order());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; i + j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    return out;
  }

  /// d/dz, order reduced by one.
  TaylorSeries derivative() const {
    if (order() == 0) return constant(0.0, center_, 0);
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) d[k] = double(k + 1) * c_[k + 1];
    return {center_, std::move(d)};
  }

  friend TaylorSeries log(const TaylorSeries& a) {
    if (detail::on_branch_cut(a.c_[0]))
      throw EvaluationDomainError("series log: center value on the branch cut (-inf, 0]");
    TaylorSeries out = constant(std::log(a.c_[0]), a.center_, a.order());
    for (int i = 1; i <= a.order(); ++i) {
      Complex acc = double(i) * a.c_[std::size_t(i)];
      for (int j = 1; j < i; ++j) acc -= double(j) * out.c_[std::size_t(j)] * a.c_[std::size_t(i - j)];
      out.c_[std::size_t(i)] = acc / (a.c_[0] * double(i));
    }
    return out;
  }

  friend TaylorSeries exp(const TaylorSeries& a) {
    TaylorSeries out = constant(std::exp(a.c_[0]), a.center_, a.order());
    for (int i = 1; i <= a.order(); ++i) {
      Complex acc = 0.0;
      for (int j = 1; j <= i; ++j)
        acc += out.c_[std::size_t(i - j)] * a.c_[std::size_t(j)] * double(j);
      out.c_[std::size_t(i)] = acc / double(i);
    }
    return out;
  }

  friend TaylorSeries pow(const TaylorSeries& a, Complex alpha) { return exp(log(a) * alpha); }

 private:
  void check_same(const TaylorSeries& o) const {
    if (center_ != o.center_ || c_.size() != o.c_.size())
      throw std::invalid_argument("taylor series: center or order mismatch");
  }

  Complex center_;
  std::vector<Complex> c_;
};

inline TaylorSeries holo_log(const TaylorSeries& t) { return log(t); }
inline TaylorSeries holo_pow(const TaylorSeries& t, Complex alpha) { return pow(t, alpha); }
inline TaylorSeries holo_one(const TaylorSeries& t) {
  return TaylorSeries::constant(1.0, t.center(), t.order());
}

/// L f = mu z^2 f'' + lambda z f', expanded about the same center with the
/// order reduced by two; z and z^2 enter exactly.
inline TaylorSeries ode_apply(const TaylorSeries& f, Complex lambda, Complex mu) {
  if (f.order() < 2) throw std::invalid_argument("ode_apply: needs order >= 2");
  const Complex c = f.center();
  const int out_order = f.order() - 2;
  auto d1 = [&](int k) { return k >= 0 && k + 1 <= f.order() ? double(k + 1) * f.coeff(k + 1) : Complex(0.0); };
  auto d2 = [&](int k) {
    return k >= 0 && k + 2 <= f.order() ? double((k + 1) * (k + 2)) * f.coeff(k + 2) : Complex(0.0);
  };
  std::vector<Complex> out(std::size_t(out_order) + 1);
  for (int k = 0; k <= out_order; ++k)
    out[std::size_t(k)] = mu * (c * c * d2(k) + 2.0 * c * d2(k - 1) + d2(k - 2)) +
                          lambda * (c * d1(k) + d1(k - 1));
  return {c, std::move(out)};
}

/// Expands the closed-form f_r at the center and applies L r times.
/// Returns (|value of L^r f_r|, |value of L^(r-1) f_r|).
inline std::pair<double, double> ode_cascade_residual(const HolomorphicCase& h, Complex center,
                                                      int order) {
  if (!in_slit_domain(center, 1e-6))
    throw EvaluationDomainError("ode oracle: center within margin of the branch cut");
  if (order < 2 * h.order)
    throw std::invalid_argument("ode oracle: expansion order must be >= 2r");
  TaylorSeries f = eval_holomorphic(h, TaylorSeries::variable(center, order));
  for (int i = 0; i < h.order - 1; ++i) f = ode_apply(f, h.lambda, h.mu);
  const double properness = std::abs(f.value());
  f = ode_apply(f, h.lambda, h.mu);
  return {std::abs(f.value()), properness};
}

/// Uniform draw from the annulus 0.5 <= |z| <= 2 intersected with Re z > 0:
/// well-conditioned centers away from both the cut and the singularity at 0.
inline Complex random_center(RandomStream& rng) {
  const double radius = std::sqrt(rng.next_uniform(0.25, 4.0));
  const double angle = rng.next_uniform(-M_PI / 2.0, M_PI / 2.0);
  return std::polar(radius, angle);
}

/// Central-difference Laplacian over the frame with one Richardson step
/// (h, h/2); the discretized counterpart of calculus::laplacian.
inline Complex fd_laplacian(const ScalarField& f, const AlgebraBasis& basis, const Matrix& p,
                            double h) {
  const Complex f0 = f.value_at(p);
  auto stencil = [&](double step) {
    Complex acc = 0.0;
    for (const Matrix& x : basis.elements) {
      const Complex fp = f.value_at(p * matrix_exp(Matrix(step * x)));
      const Complex fm = f.value_at(p * matrix_exp(Matrix(-step * x)));
      acc += (fp - 2.0 * f0 + fm) / (step * step);
    }
    return acc;
  };
  const Complex coarse = stencil(h);
  const Complex fine = stencil(h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace polyharmonia
