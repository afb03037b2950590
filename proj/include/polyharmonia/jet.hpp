#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "polyharmonia/errors.hpp"

namespace polyharmonia {

using Complex = std::complex<double>;

namespace detail {

inline std::size_t pow3(int n) {
  std::size_t r = 1;
  while (n-- > 0) r *= 3;
  return r;
}

/// Truncated-ring convolution over the nested-polynomial layout: the most
/// significant base-3 digit of a flat index is the exponent of the last
/// variable. Per-variable degree caps at 2, so digit sums never carry.
inline void mul_blocks(const Complex* a, const Complex* b, Complex* out, int vars,
                       std::size_t block) {
  if (vars == 0) {
    *out += *a * *b;
    return;
  }
  const std::size_t sub = block / 3;
  for (int ea = 0; ea < 3; ++ea)
    for (int eb = 0; ea + eb < 3; ++eb)
      mul_blocks(a + ea * sub, b + eb * sub, out + (ea + eb) * sub, vars - 1, sub);
}

inline bool on_branch_cut(Complex z) { return z.imag() == 0.0 && z.real() <= 0.0; }

}  // namespace detail

/// A complex scalar carrying a multivariate Taylor expansion in num_vars
/// curve parameters, truncated at per-variable degree 2. Coefficients are
/// dense: flat index i encodes the multi-index alpha via base-3 digits,
/// alpha_k = (i / 3^k) % 3.
class JetScalar {
 public:
  static constexpr int kMaxVars = 8;

  JetScalar() : num_vars_(0), c_(1, Complex(0.0)) {}

  static JetScalar constant(Complex value, int num_vars = 0) {
    JetScalar j(num_vars);
    j.c_[0] = value;
    return j;
  }

  /// base + t_k as a jet in num_vars variables.
  static JetScalar variable(int var_index, Complex base, int num_vars) {
    JetScalar j(num_vars);
    j.check_var(var_index);
    j.c_[0] = base;
    j.c_[detail::pow3(var_index)] = 1.0;
    return j;
  }

  int num_vars() const { return num_vars_; }
  std::size_t size() const { return c_.size(); }
  Complex value() const { return c_[0]; }
  Complex coeff(std::size_t flat_index) const { return c_.at(flat_index); }
  Complex coeff(std::span<const int> alpha) const {
    if (int(alpha.size()) != num_vars_) throw std::invalid_argument("jet: multi-index arity mismatch");
    std::size_t idx = 0, stride = 1;
    for (int k = 0; k < num_vars_; ++k, stride *= 3) {
      if (alpha[k] < 0 || alpha[k] > 2) throw std::out_of_range("jet: exponent outside {0,1,2}");
      idx += std::size_t(alpha[k]) * stride;
    }
    return c_[idx];
  }
  std::span<const Complex> coeffs() const { return c_; }

  JetScalar& operator+=(const JetScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  JetScalar& operator-=(const JetScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  JetScalar& operator+=(Complex s) {
    c_[0] += s;
    return *this;
  }
  JetScalar& operator-=(Complex s) {
    c_[0] -= s;
    return *this;
  }
  JetScalar& operator*=(Complex s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  JetScalar& operator*=(const JetScalar& o) {
    *this = *this * o;
    return *this;
  }

  /// this += s * o, fused to avoid a temporary.
  JetScalar& add_scaled(const JetScalar& o, Complex s) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * o.c_[i];
    return *this;
  }

  JetScalar operator-() const {
    JetScalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend JetScalar operator+(JetScalar a, const JetScalar& b) { return a += b; }
  friend JetScalar operator-(JetScalar a, const JetScalar& b) { return a -= b; }
  friend JetScalar operator+(JetScalar a, Complex b) { return a += b; }
  friend JetScalar operator+(Complex a, JetScalar b) { return b += a; }
  friend JetScalar operator-(JetScalar a, Complex b) { return a -= b; }
  friend JetScalar operator-(Complex a, const JetScalar& b) { return -b + a; }
  friend JetScalar operator*(JetScalar a, Complex b) { return a *= b; }
  friend JetScalar operator*(Complex a, JetScalar b) { return b *= a; }

  friend JetScalar operator*(const JetScalar& a, const JetScalar& b) {
    a.check_same(b);
    JetScalar out(a.num_vars_);
    detail::mul_blocks(a.c_.data(), b.c_.data(), out.c_.data(), a.num_vars_, a.c_.size());
    return out;
  }

  friend JetScalar operator/(const JetScalar& a, const JetScalar& b) { return a * inverse(b); }
  friend JetScalar operator/(JetScalar a, Complex b) { return a *= Complex(1.0) / b; }
  friend JetScalar operator/(Complex a, const JetScalar& b) { return inverse(b) * a; }

  /// Truncated reciprocal series around the value coefficient.
  friend JetScalar inverse(const JetScalar& b) {
    const Complex v = b.value();
    if (v == Complex(0.0))
      throw EvaluationDomainError("jet division: singular point (zero value coefficient)");
    JetScalar m = b.nilpotent_part() * (Complex(1.0) / v);
    const int order = 2 * b.num_vars_;
    // 1/(1+m) = sum (-m)^k, Horner form
    JetScalar acc = constant(1.0, b.num_vars_);
    for (int j = 0; j < order; ++j) acc = constant(1.0, b.num_vars_) - m * acc;
    return acc * (Complex(1.0) / v);
  }

  /// Principal-branch logarithm composed with the nilpotent part.
  friend JetScalar log(const JetScalar& a) {
    const Complex v = a.value();
    if (detail::on_branch_cut(v))
      throw EvaluationDomainError("jet log: value coefficient on the branch cut (-inf, 0]");
    const int order = 2 * a.num_vars_;
    if (order == 0) return constant(std::log(v), 0);
    JetScalar m = a.nilpotent_part() * (Complex(1.0) / v);
    // log(1+m) = m (1 - m (1/2 - m (1/3 - ...)))
    JetScalar acc = constant(Complex(1.0 / order), a.num_vars_);
    for (int j = order - 1; j >= 1; --j) acc = constant(Complex(1.0 / j), a.num_vars_) - m * acc;
    acc = m * acc;
    acc.c_[0] += std::log(v);
    return acc;
  }

  friend JetScalar exp(const JetScalar& a) {
    const Complex v = a.value();
    const int order = 2 * a.num_vars_;
    if (order == 0) return constant(std::exp(v), 0);
    JetScalar n = a.nilpotent_part();
    JetScalar acc = constant(1.0, a.num_vars_);
    for (int j = order; j >= 1; --j)
      acc = constant(1.0, a.num_vars_) + n * acc * Complex(1.0 / j);
    return acc * std::exp(v);
  }

  /// z^alpha = exp(alpha log z) on the slit plane.
  friend JetScalar pow(const JetScalar& a, Complex alpha) { return exp(log(a) * alpha); }

  /// d/dt_k, as a jet in the remaining num_vars-1 variables.
  JetScalar first_derivative(int var_index) const { return derivative_extract(var_index, 1); }

  /// d^2/dt_k^2, as a jet in the remaining num_vars-1 variables.
  JetScalar second_derivative(int var_index) const { return derivative_extract(var_index, 2); }

  /// t_k^power * (*this); terms whose degree in t_k would exceed 2 drop out.
  JetScalar shifted(int var_index, int power) const {
    check_var(var_index);
    if (power < 0 || power > 2) throw std::out_of_range("jet shift: power outside {0,1,2}");
    JetScalar out(num_vars_);
    const std::size_t stride = detail::pow3(var_index);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const int digit = int((i / stride) % 3);
      if (digit + power <= 2) out.c_[i + std::size_t(power) * stride] += c_[i];
    }
    return out;
  }

  friend bool operator==(const JetScalar& a, const JetScalar& b) {
    return a.num_vars_ == b.num_vars_ && a.c_ == b.c_;
  }

  friend std::ostream& operator<<(std::ostream& os, const JetScalar& j) {
    os << "jet[" << j.num_vars_ << "](";
    for (std::size_t i = 0; i < j.c_.size(); ++i) {
      if (i) os << ", ";
      os << j.c_[i];
    }
    return os << ")";
  }

 private:
  explicit JetScalar(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0 || num_vars > kMaxVars) throw std::invalid_argument("jet: num_vars out of range");
    c_.assign(detail::pow3(num_vars), Complex(0.0));
  }

  JetScalar nilpotent_part() const {
    JetScalar n = *this;
    n.c_[0] = 0.0;
    return n;
  }

  void check_var(int k) const {
    if (k < 0 || k >= num_vars_) throw std::out_of_range("jet: variable index out of range");
  }
  void check_same(const JetScalar& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("jet: num_vars mismatch");
  }

  JetScalar derivative_extract(int k, int exponent) const {
    check_var(k);
    JetScalar out(num_vars_ - 1);
    const std::size_t low = detail::pow3(k);
    const double factor = exponent == 2 ? 2.0 : 1.0;
    for (std::size_t i = 0; i < out.c_.size(); ++i) {
      const std::size_t lo = i % low;
      const std::size_t hi = i / low;
      out.c_[i] = factor * c_[lo + std::size_t(exponent) * low + hi * low * 3];
    }
    return out;
  }

  int num_vars_;
  std::vector<Complex> c_;
};

/// Dense matrix of jets sharing num_vars; the curve-evaluation carrier.
class JetMatrix {
 public:
  JetMatrix(int rows, int cols, int num_vars)
      : rows_(rows), cols_(cols), num_vars_(num_vars),
        entries_(std::size_t(rows) * cols, JetScalar::constant(0.0, num_vars)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("jet matrix: empty shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_vars() const { return num_vars_; }

  JetScalar& at(int i, int j) { return entries_[std::size_t(i) * cols_ + j]; }
  const JetScalar& at(int i, int j) const { return entries_[std::size_t(i) * cols_ + j]; }

  /// Truncated-ring matrix product.
  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols_ != b.rows_ || a.num_vars_ != b.num_vars_)
      throw std::invalid_argument("jet matrix: shape or num_vars mismatch");
    JetMatrix out(a.rows_, b.cols_, a.num_vars_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l)
        for (int j = 0; j < b.cols_; ++j)
          out.at(i, j) += a.at(i, l) * b.at(l, j);
    return out;
  }

 private:
  int rows_, cols_, num_vars_;
  std::vector<JetScalar> entries_;
};

}  // namespace polyharmonia
