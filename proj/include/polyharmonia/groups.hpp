#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polyharmonia/jet.hpp"
#include "polyharmonia/rng.hpp"

namespace polyharmonia {

using Matrix = Eigen::MatrixXcd;

/// The classical semisimple matrix families, plus U(n) as the ambient group
/// used by the SU(n) reduction check.
enum class Family { SO, SU, Sp, SLR, SpR, SOO, SUU, Spp, SOstar, SUstar, U };

struct GroupSpec {
  Family family = Family::SO;
  int n = 0;       // size parameter; for indefinite families n = p + q
  int p = 0, q = 0;

  /// Side length of the matrix realization (2n for the quaternionic and
  /// real-symplectic representations).
  int ambient_size() const {
    switch (family) {
      case Family::SO:
      case Family::SU:
      case Family::SLR:
      case Family::U:
        return n;
      case Family::SOO:
      case Family::SUU:
        return p + q;
      case Family::Sp:
      case Family::SpR:
      case Family::SOstar:
      case Family::SUstar:
        return 2 * n;
      case Family::Spp:
        return 2 * (p + q);
    }
    return 0;
  }

  bool is_real_family() const {
    return family == Family::SO || family == Family::SLR || family == Family::SpR ||
           family == Family::SOO;
  }

  bool has_signature() const {
    return family == Family::SOO || family == Family::SUU || family == Family::Spp;
  }

  static GroupSpec parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

inline Matrix unit(int size, int i, int j) {
  Matrix m = Matrix::Zero(size, size);
  m(i, j) = 1.0;
  return m;
}

}  // namespace detail

/// diag(-I_p, I_q)
inline Matrix indefinite_form(int p, int q) {
  Matrix m = Matrix::Identity(p + q, p + q);
  m.topLeftCorner(p, p) *= -1.0;
  return m;
}

/// [[0, I_n], [-I_n, 0]]
inline Matrix symplectic_form(int n) {
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = Matrix::Identity(n, n);
  m.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return m;
}

/// (z + jw) -> [[z, w], [-conj(w), conj(z)]]
inline Matrix quaternionic_embed(const Matrix& z, const Matrix& w) {
  const int n = int(z.rows());
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = z;
  m.topRightCorner(n, n) = w;
  m.bottomLeftCorner(n, n) = -w.conjugate();
  m.bottomRightCorner(n, n) = z.conjugate();
  return m;
}

/// The canonical inner product Re trace(X Y*).
inline double trace_inner(const Matrix& x, const Matrix& y) {
  return (x.cwiseProduct(y.conjugate())).sum().real();
}

struct AlgebraBasis {
  GroupSpec spec;
  std::vector<Matrix> elements;

  int dim() const { return int(elements.size()); }

  /// max_ij |<X_i, X_j> - delta_ij|
  double gram_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i; j < elements.size(); ++j) {
        const double g = trace_inner(elements[i], elements[j]);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    return worst;
  }
};

namespace detail {

const Complex kI(0.0, 1.0);

// ---- generator enumerations (real-linear spanning sets, later normalized) --

inline void append_antisymmetric_real(std::vector<Matrix>& out, int size, int lo, int hi) {
  for (int i = lo; i < hi; ++i)
    for (int j = i + 1; j < hi; ++j) out.push_back(unit(size, i, j) - unit(size, j, i));
}

/// Off-diagonal anti-Hermitian generators within the index window [lo, hi).
inline void append_antihermitian_offdiag(std::vector<Matrix>& out, int size, int lo, int hi) {
  for (int i = lo; i < hi; ++i)
    for (int j = i + 1; j < hi; ++j) {
      out.push_back(unit(size, i, j) - unit(size, j, i));
      out.push_back(kI * (unit(size, i, j) + unit(size, j, i)));
    }
}

inline void append_imag_diag(std::vector<Matrix>& out, int size, int lo, int hi) {
  for (int a = lo; a < hi; ++a) out.push_back(kI * unit(size, a, a));
}

/// Traceless diagonals diag(1,...,1,-k,0,...,0), optionally times i.
inline void append_traceless_diag(std::vector<Matrix>& out, int size, bool imaginary) {
  for (int k = 1; k < size; ++k) {
    Matrix d = Matrix::Zero(size, size);
    for (int a = 0; a < k; ++a) d(a, a) = 1.0;
    d(k, k) = -double(k);
    out.push_back(imaginary ? Matrix(kI * d) : d);
  }
}

/// Full u(n)-style anti-Hermitian set.
inline std::vector<Matrix> antihermitian_set(int n) {
  std::vector<Matrix> out;
  append_antihermitian_offdiag(out, n, 0, n);
  append_imag_diag(out, n, 0, n);
  return out;
}

/// Complex symmetric n x n set (real and imaginary parts separately).
inline std::vector<Matrix> symmetric_complex_set(int n) {
  std::vector<Matrix> out;
  for (int a = 0; a < n; ++a) {
    out.push_back(unit(n, a, a));
    out.push_back(kI * unit(n, a, a));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(unit(n, i, j) + unit(n, j, i));
      out.push_back(kI * (unit(n, i, j) + unit(n, j, i)));
    }
  return out;
}

inline std::vector<Matrix> antisymmetric_complex_set(int n) {
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(unit(n, i, j) - unit(n, j, i));
      out.push_back(kI * (unit(n, i, j) - unit(n, j, i)));
    }
  return out;
}

/// su(p,q)-style generators on indices split at p: blocks [[a, b], [b*, d]]
/// with a, d anti-Hermitian and the diagonal jointly traceless.
inline std::vector<Matrix> indefinite_unitary_set(int p, int q) {
  const int n = p + q;
  std::vector<Matrix> out;
  append_antihermitian_offdiag(out, n, 0, p);
  append_antihermitian_offdiag(out, n, p, n);
  for (int i = 0; i < p; ++i)
    for (int j = p; j < n; ++j) {
      out.push_back(unit(n, i, j) + unit(n, j, i));
      out.push_back(kI * (unit(n, i, j) - unit(n, j, i)));
    }
  append_traceless_diag(out, n, /*imaginary=*/true);
  return out;
}

/// sp(p,q) z-block: anti-Hermitian w.r.t. I_{p,q} without the traceless
/// condition (the diagonal is imaginary, so Re trace vanishes anyway).
inline std::vector<Matrix> indefinite_antihermitian_set(int p, int q) {
  const int n = p + q;
  std::vector<Matrix> out;
  append_antihermitian_offdiag(out, n, 0, p);
  append_antihermitian_offdiag(out, n, p, n);
  append_imag_diag(out, n, 0, n);
  for (int i = 0; i < p; ++i)
    for (int j = p; j < n; ++j) {
      out.push_back(unit(n, i, j) + unit(n, j, i));
      out.push_back(kI * (unit(n, i, j) - unit(n, j, i)));
    }
  return out;
}

/// sp(p,q) w-block: w11, w22 complex symmetric, w21 = -w12^t.
inline std::vector<Matrix> indefinite_symmetric_set(int p, int q) {
  const int n = p + q;
  std::vector<Matrix> out;
  auto embed = [&](const Matrix& blk, int row0, int col0) {
    Matrix m = Matrix::Zero(n, n);
    m.block(row0, col0, blk.rows(), blk.cols()) = blk;
    return m;
  };
  for (const Matrix& s : symmetric_complex_set(p)) out.push_back(embed(s, 0, 0));
  for (const Matrix& s : symmetric_complex_set(q)) out.push_back(embed(s, p, p));
  for (int i = 0; i < p; ++i)
    for (int j = p; j < n; ++j) {
      out.push_back(unit(n, i, j) - unit(n, j, i));
      out.push_back(kI * (unit(n, i, j) - unit(n, j, i)));
    }
  return out;
}

inline std::vector<Matrix> build_generators(const GroupSpec& s) {
  std::vector<Matrix> out;
  const int n = s.n;
  switch (s.family) {
    case Family::SO:
      append_antisymmetric_real(out, n, 0, n);
      break;
    case Family::U:
      out = antihermitian_set(n);
      break;
    case Family::SU:
      append_antihermitian_offdiag(out, n, 0, n);
      append_traceless_diag(out, n, /*imaginary=*/true);
      break;
    case Family::SLR:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) out.push_back(unit(n, i, j));
      append_traceless_diag(out, n, /*imaginary=*/false);
      break;
    case Family::Sp: {
      const Matrix zero = Matrix::Zero(n, n);
      for (const Matrix& z : antihermitian_set(n)) out.push_back(quaternionic_embed(z, zero));
      for (const Matrix& w : symmetric_complex_set(n)) out.push_back(quaternionic_embed(zero, w));
      break;
    }
    case Family::SpR: {
      // [[A, B], [C, -A^t]] with B, C real symmetric
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Matrix m = Matrix::Zero(2 * n, 2 * n);
          m(i, j) = 1.0;
          m(n + j, n + i) = -1.0;
          out.push_back(m);
        }
      auto sym = [&](int i, int j) {
        Matrix b = Matrix::Zero(n, n);
        b(i, j) = 1.0;
        b(j, i) = 1.0;
        return b;
      };
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Matrix b = sym(i, j);
          Matrix top = Matrix::Zero(2 * n, 2 * n);
          top.topRightCorner(n, n) = b;
          out.push_back(top);
          Matrix bot = Matrix::Zero(2 * n, 2 * n);
          bot.bottomLeftCorner(n, n) = b;
          out.push_back(bot);
        }
      break;
    }
    case Family::SOO: {
      const int size = s.p + s.q;
      append_antisymmetric_real(out, size, 0, s.p);
      append_antisymmetric_real(out, size, s.p, size);
      for (int i = 0; i < s.p; ++i)
        for (int j = s.p; j < size; ++j) out.push_back(unit(size, i, j) + unit(size, j, i));
      break;
    }
    case Family::SUU:
      out = indefinite_unitary_set(s.p, s.q);
      break;
    case Family::Spp: {
      const int m = s.p + s.q;
      const Matrix zero = Matrix::Zero(m, m);
      for (const Matrix& z : indefinite_antihermitian_set(s.p, s.q))
        out.push_back(quaternionic_embed(z, zero));
      for (const Matrix& w : indefinite_symmetric_set(s.p, s.q))
        out.push_back(quaternionic_embed(zero, w));
      break;
    }
    case Family::SOstar: {
      const Matrix zero = Matrix::Zero(n, n);
      for (const Matrix& z : antihermitian_set(n)) out.push_back(quaternionic_embed(z, zero));
      for (const Matrix& w : antisymmetric_complex_set(n)) out.push_back(quaternionic_embed(zero, w));
      break;
    }
    case Family::SUstar: {
      const Matrix zero = Matrix::Zero(n, n);
      std::vector<Matrix> zs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) {
            zs.push_back(unit(n, i, j));
            zs.push_back(kI * unit(n, i, j));
          }
      append_imag_diag(zs, n, 0, n);
      append_traceless_diag(zs, n, /*imaginary=*/false);
      for (const Matrix& z : zs) out.push_back(quaternionic_embed(z, zero));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          out.push_back(quaternionic_embed(zero, unit(n, i, j)));
          out.push_back(quaternionic_embed(zero, kI * unit(n, i, j)));
        }
      break;
    }
  }
  return out;
}

/// Modified Gram-Schmidt under Re trace(X Y*). The structured generators are
/// already orthogonal; this pins the invariant regardless.
inline void orthonormalize(std::vector<Matrix>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      basis[i] -= trace_inner(basis[i], basis[j]) * basis[j];
    const double norm = std::sqrt(trace_inner(basis[i], basis[i]));
    if (norm < 1e-10) throw std::logic_error("algebra basis: rank-deficient generator set");
    basis[i] /= norm;
  }
}

}  // namespace detail

inline AlgebraBasis algebra_basis(const GroupSpec& spec) {
  AlgebraBasis basis{spec, detail::build_generators(spec)};
  detail::orthonormalize(basis.elements);
  return basis;
}

/// Closed-form dimension; cross-checked against the basis length and the
/// constraint-rank oracle in the test suite.
inline int group_dim(const GroupSpec& s) {
  const int n = s.n, p = s.p, q = s.q;
  switch (s.family) {
    case Family::SO: return n * (n - 1) / 2;
    case Family::SU: return n * n - 1;
    case Family::Sp: return n * (2 * n + 1);
    case Family::SLR: return n * n - 1;
    case Family::SpR: return n * (2 * n + 1);
    case Family::SOO: return (p + q) * (p + q - 1) / 2;
    case Family::SUU: return (p + q) * (p + q) - 1;
    case Family::Spp: return (p + q) * (2 * (p + q) + 1);
    case Family::SOstar: return n * (2 * n - 1);
    case Family::SUstar: return 4 * n * n - 1;
    case Family::U: return n * n;
  }
  return 0;
}

/// Frobenius-norm residual of all defining equations; 0 iff the matrix lies
/// in the group.
inline double membership_residual(const GroupSpec& s, const Matrix& m) {
  const int size = s.ambient_size();
  if (m.rows() != size || m.cols() != size)
    throw std::invalid_argument("membership: matrix size does not match group spec");
  const Matrix id = Matrix::Identity(size, size);
  double res = 0.0;
  auto det_term = [&] { return std::abs(m.determinant() - Complex(1.0)); };
  auto real_term = [&] { return m.imag().norm(); };
  auto quaternionic_term = [&] {
    const Matrix j = symplectic_form(size / 2);
    return (m * j - j * m.conjugate()).norm();
  };
  switch (s.family) {
    case Family::SO:
      res = (m * m.transpose() - id).norm() + det_term() + real_term();
      break;
    case Family::SU:
      res = (m * m.adjoint() - id).norm() + det_term();
      break;
    case Family::U:
      res = (m * m.adjoint() - id).norm();
      break;
    case Family::Sp:
      res = (m * m.adjoint() - id).norm() + quaternionic_term();
      break;
    case Family::SLR:
      res = det_term() + real_term();
      break;
    case Family::SpR: {
      const Matrix j = symplectic_form(s.n);
      res = (m * j * m.transpose() - j).norm() + det_term() + real_term();
      break;
    }
    case Family::SOO: {
      const Matrix f = indefinite_form(s.p, s.q);
      res = (m * f * m.transpose() - f).norm() + det_term() + real_term();
      break;
    }
    case Family::SUU: {
      const Matrix f = indefinite_form(s.p, s.q);
      res = (m * f * m.adjoint() - f).norm() + det_term();
      break;
    }
    case Family::Spp: {
      const Matrix fq = indefinite_form(s.p, s.q);
      Matrix f = Matrix::Zero(size, size);
      f.topLeftCorner(size / 2, size / 2) = fq;
      f.bottomRightCorner(size / 2, size / 2) = fq;
      res = (m * f * m.adjoint() - f).norm() + quaternionic_term();
      break;
    }
    case Family::SOstar: {
      const Matrix f = indefinite_form(s.n, s.n);
      const Matrix fj = f * symplectic_form(s.n);
      res = (m * f * m.adjoint() - f).norm() + (m * fj * m.transpose() - fj).norm() + det_term();
      break;
    }
    case Family::SUstar:
      res = quaternionic_term() + det_term();
      break;
  }
  return res;
}

/// Scaling-and-squaring exponential with a truncated series.
inline Matrix matrix_exp(const Matrix& x, double tol = 1e-14) {
  const int n = int(x.rows());
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = x;
  if (norm > 0.5) {
    squarings = int(std::ceil(std::log2(norm / 0.5)));
    a /= std::pow(2.0, squarings);
  }
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = Matrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * a / double(k);
    sum += term;
    if (term.norm() <= tol * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// exp(sum_i c_i X_i) with c_i ~ N(0, scale^2) from the seeded stream.
inline Matrix random_point(const AlgebraBasis& basis, std::uint64_t seed, double scale) {
  const int size = basis.spec.ambient_size();
  Matrix x = Matrix::Zero(size, size);
  RandomStream rng(seed);
  for (const Matrix& el : basis.elements) x += Complex(rng.next_normal() * scale) * el;
  return matrix_exp(x);
}

inline Matrix random_point(const GroupSpec& spec, std::uint64_t seed, double scale) {
  return random_point(algebra_basis(spec), seed, scale);
}

/// Jet of the one-parameter curve p exp(t_k X), exact in the truncated ring:
/// p (I + t_k X + t_k^2 X^2 / 2).
inline JetMatrix mul_curve(const JetMatrix& q, const Matrix& x, int var_index) {
  if (q.rows() != x.rows() || q.cols() != x.rows() || x.rows() != x.cols())
    throw std::invalid_argument("curve: matrix size mismatch");
  const int size = q.rows();
  JetMatrix out = q;
  // qx = q*x, qxx = q*x^2; both enter shifted by t_k and t_k^2/2
  JetMatrix qx(size, size, q.num_vars());
  for (int i = 0; i < size; ++i)
    for (int l = 0; l < size; ++l) {
      const auto& jet = q.at(i, l);
      for (int j = 0; j < size; ++j)
        if (x(l, j) != Complex(0.0)) qx.at(i, j).add_scaled(jet, x(l, j));
    }
  JetMatrix qxx(size, size, q.num_vars());
  for (int i = 0; i < size; ++i)
    for (int l = 0; l < size; ++l) {
      const auto& jet = qx.at(i, l);
      for (int j = 0; j < size; ++j)
        if (x(l, j) != Complex(0.0)) qxx.at(i, j).add_scaled(jet, x(l, j));
    }
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      out.at(i, j) += qx.at(i, j).shifted(var_index, 1);
      out.at(i, j).add_scaled(qxx.at(i, j).shifted(var_index, 2), 0.5);
    }
  return out;
}

inline JetMatrix jet_constant(const Matrix& m, int num_vars) {
  JetMatrix out(int(m.rows()), int(m.cols()), num_vars);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = JetScalar::constant(m(i, j), num_vars);
  return out;
}

inline JetMatrix curve(const Matrix& p, const Matrix& x, int var_index, int num_vars) {
  return mul_curve(jet_constant(p, num_vars), x, var_index);
}

// ---- group string parsing -------------------------------------------------

inline GroupSpec GroupSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("group string '" + std::string(text) + "': expected <family>:<size>");
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);

  GroupSpec s;
  bool sig = false;
  if (name == "so") s.family = Family::SO;
  else if (name == "su") s.family = Family::SU;
  else if (name == "sp") s.family = Family::Sp;
  else if (name == "slr") s.family = Family::SLR;
  else if (name == "spr") s.family = Family::SpR;
  else if (name == "soo") { s.family = Family::SOO; sig = true; }
  else if (name == "suu") { s.family = Family::SUU; sig = true; }
  else if (name == "spp") { s.family = Family::Spp; sig = true; }
  else if (name == "sostar") s.family = Family::SOstar;
  else if (name == "sustar") s.family = Family::SUstar;
  else if (name == "u") s.family = Family::U;
  else throw std::invalid_argument("unknown group family '" + std::string(name) + "'");

  auto parse_int = [&](std::string_view v) {
    int out = 0;
    if (v.empty()) throw std::invalid_argument("group string: missing size");
    for (char c : v) {
      if (c < '0' || c > '9') throw std::invalid_argument("group string: bad size '" + std::string(v) + "'");
      out = out * 10 + (c - '0');
    }
    return out;
  };

  if (sig) {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("group string '" + std::string(text) + "': expected p,q");
    s.p = parse_int(args.substr(0, comma));
    s.q = parse_int(args.substr(comma + 1));
    if (s.p < 1 || s.q < 1) throw std::invalid_argument("group string: p and q must be positive");
    s.n = s.p + s.q;
  } else {
    s.n = parse_int(args);
    if (s.n < 1) throw std::invalid_argument("group string: size must be positive");
  }
  return s;
}

inline std::string GroupSpec::str() const {
  auto base = [&]() -> std::string {
    switch (family) {
      case Family::SO: return "so";
      case Family::SU: return "su";
      case Family::Sp: return "sp";
      case Family::SLR: return "slr";
      case Family::SpR: return "spr";
      case Family::SOO: return "soo";
      case Family::SUU: return "suu";
      case Family::Spp: return "spp";
      case Family::SOstar: return "sostar";
      case Family::SUstar: return "sustar";
      case Family::U: return "u";
    }
    return "?";
  }();
  if (has_signature()) return base + ":" + std::to_string(p) + "," + std::to_string(q);
  return base + ":" + std::to_string(n);
}

}  // namespace polyharmonia
