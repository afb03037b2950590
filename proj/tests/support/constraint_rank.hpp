#pragma once

// Test-side dimension oracle: the Lie algebra of each catalog family is the
// real solution space of R-linear constraints on the ambient matrix space.
// Its dimension is computed here by rank, independently of the structured
// generator enumeration in the library.

#include <Eigen/Dense>
#include <vector>

#include "polyharmonia/groups.hpp"

namespace polyharmonia::testing {

/// Complex matrices whose vanishing defines the Lie algebra of the family
/// (realness and trace conditions are encoded as matrices too).
inline std::vector<Matrix> constraint_images(const GroupSpec& s, const Matrix& x) {
  std::vector<Matrix> out;
  auto trace_row = [&](const Matrix& m) {
    Matrix t(1, 1);
    t(0, 0) = m.trace();
    return t;
  };
  auto realness = [&] { return Matrix(x.imag().cast<Complex>()); };
  auto quaternionic = [&] {
    const Matrix j = symplectic_form(int(x.rows()) / 2);
    return Matrix(x * j - j * x.conjugate());
  };
  switch (s.family) {
    case Family::SO:
      out = {realness(), x + x.transpose()};
      break;
    case Family::SU:
      out = {x + x.adjoint(), trace_row(x)};
      break;
    case Family::U:
      out = {x + x.adjoint()};
      break;
    case Family::Sp:
      out = {x + x.adjoint(), quaternionic()};
      break;
    case Family::SLR:
      out = {realness(), trace_row(x)};
      break;
    case Family::SpR: {
      const Matrix j = symplectic_form(s.n);
      out = {realness(), x * j + j * x.transpose()};
      break;
    }
    case Family::SOO: {
      const Matrix f = indefinite_form(s.p, s.q);
      out = {realness(), x * f + f * x.transpose()};
      break;
    }
    case Family::SUU: {
      const Matrix f = indefinite_form(s.p, s.q);
      out = {x * f + f * x.adjoint(), trace_row(x)};
      break;
    }
    case Family::Spp: {
      const Matrix fq = indefinite_form(s.p, s.q);
      const int half = s.ambient_size() / 2;
      Matrix f = Matrix::Zero(2 * half, 2 * half);
      f.topLeftCorner(half, half) = fq;
      f.bottomRightCorner(half, half) = fq;
      out = {x * f + f * x.adjoint(), quaternionic()};
      break;
    }
    case Family::SOstar: {
      const Matrix f = indefinite_form(s.n, s.n);
      const Matrix fj = f * symplectic_form(s.n);
      out = {x * f + f * x.adjoint(), x * fj + fj * x.transpose(), trace_row(x)};
      break;
    }
    case Family::SUstar:
      out = {quaternionic(), trace_row(x)};
      break;
  }
  return out;
}

/// Total Frobenius residual of the linearized constraints at x.
inline double constraint_residual(const GroupSpec& s, const Matrix& x) {
  double res = 0.0;
  for (const Matrix& m : constraint_images(s, x)) res += m.norm();
  return res;
}

/// dim = (real ambient dimension) - rank(constraint operator), by SVD.
inline int constraint_rank_dimension(const GroupSpec& s) {
  const int size = s.ambient_size();
  const int vars = 2 * size * size;

  // probe the operator on the basis E_ij, iE_ij to get its matrix
  std::vector<Eigen::VectorXd> columns;
  int rows = -1;
  for (int re_im = 0; re_im < 2; ++re_im)
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        Matrix x = Matrix::Zero(size, size);
        x(i, j) = re_im == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
        const auto images = constraint_images(s, x);
        std::vector<double> flat;
        for (const Matrix& m : images)
          for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b) {
              flat.push_back(m(a, b).real());
              flat.push_back(m(a, b).imag());
            }
        if (rows < 0) rows = int(flat.size());
        columns.push_back(Eigen::Map<Eigen::VectorXd>(flat.data(), long(flat.size())));
      }

  Eigen::MatrixXd op(rows, vars);
  for (int c = 0; c < vars; ++c) op.col(c) = columns[std::size_t(c)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * (sv.size() > 0 ? sv(0) : 1.0);
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > tol) ++rank;
  return vars - rank;
}

inline std::vector<std::string> desk_group_strings() {
  return {"so:4",  "su:3",  "sp:2",      "slr:3",     "spr:2", "soo:2,2",
          "soo:3,1", "suu:1,2", "spp:1,1", "sostar:2", "sustar:2", "u:3"};
}

}  // namespace polyharmonia::testing
