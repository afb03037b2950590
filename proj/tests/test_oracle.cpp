#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "polyharmonia/oracle.hpp"

using namespace polyharmonia;

TEST_CASE("taylor series primitives reproduce known expansions") {
  // log(z) at center 1: [0, 1, -1/2, 1/3, -1/4]
  const TaylorSeries lg = log(TaylorSeries::variable(1.0, 4));
  CHECK(std::abs(lg.coeff(0)) <= 1e-15);
  CHECK(std::abs(lg.coeff(1) - Complex(1.0)) <= 1e-15);
  CHECK(std::abs(lg.coeff(2) - Complex(-0.5)) <= 1e-15);
  CHECK(std::abs(lg.coeff(3) - Complex(1.0 / 3.0)) <= 1e-15);
  CHECK(std::abs(lg.coeff(4) - Complex(-0.25)) <= 1e-15);

  // exp(z) at center 0: 1/k!
  const TaylorSeries ex = exp(TaylorSeries::variable(0.0, 5));
  for (int k = 0; k <= 5; ++k)
    CHECK(std::abs(ex.coeff(k) - Complex(1.0 / std::tgamma(double(k) + 1.0))) <= 1e-14);

  // sqrt via pow(1/2) at center 4: value 2, slope 1/4
  const TaylorSeries rt = pow(TaylorSeries::variable(4.0, 3), 0.5);
  CHECK(std::abs(rt.coeff(0) - Complex(2.0)) <= 1e-14);
  CHECK(std::abs(rt.coeff(1) - Complex(0.25)) <= 1e-14);

  // exp(log(f)) round-trips
  const Complex center(0.8, 0.6);
  TaylorSeries f = TaylorSeries::variable(center, 6);
  f = f * f + f * Complex(0.3, 0.1);
  const TaylorSeries round = exp(log(f));
  for (int k = 0; k <= 6; ++k)
    CHECK(std::abs(round.coeff(k) - f.coeff(k)) <= 1e-12 * (1.0 + std::abs(f.coeff(k))));

  CHECK_THROWS_AS(log(TaylorSeries::variable(Complex(-1.0, 0.0), 3)), EvaluationDomainError);
}

TEST_CASE("ode_apply on hand inputs") {
  const Complex lambda(0.7, -0.3), mu(-0.5, 0.2);

  // f = z at center 2 (f'' = 0): L f = lambda z
  const TaylorSeries f = TaylorSeries::variable(2.0, 3);
  const TaylorSeries lf = ode_apply(f, lambda, mu);
  CHECK(lf.order() == 1);
  CHECK(std::abs(lf.coeff(0) - 2.0 * lambda) <= 1e-15);
  CHECK(std::abs(lf.coeff(1) - lambda) <= 1e-15);

  // f = log z at center 1: L f = lambda - mu, a constant
  const TaylorSeries lg = log(TaylorSeries::variable(1.0, 5));
  const TaylorSeries llg = ode_apply(lg, lambda, mu);
  CHECK(std::abs(llg.coeff(0) - (lambda - mu)) <= 1e-14);
  for (int k = 1; k <= llg.order(); ++k) CHECK(std::abs(llg.coeff(k)) <= 1e-13);

  // f = z^(1 - lambda/mu) is annihilated
  const Complex alpha = Complex(1.0) - lambda / mu;
  for (Complex center : {Complex(1.5, 0.5), Complex(0.7, -0.9), Complex(2.0, 0.0)}) {
    const TaylorSeries zf = pow(TaylorSeries::variable(center, 8), alpha);
    const TaylorSeries lzf = ode_apply(zf, lambda, mu);
    double scale = 0.0;
    for (int k = 0; k <= zf.order(); ++k) scale = std::max(scale, std::abs(zf.coeff(k)));
    for (int k = 0; k <= lzf.order(); ++k) CHECK(std::abs(lzf.coeff(k)) <= 1e-10 * scale);
  }

  CHECK_THROWS_AS(ode_apply(TaylorSeries::variable(1.0, 1), lambda, mu), std::invalid_argument);
}

TEST_CASE("ode_apply is linear") {
  RandomStream rng(555);
  const Complex lambda(0.4, 0.1), mu(-0.3, 0.0);
  for (int rep = 0; rep < 10; ++rep) {
    const Complex center = random_center(rng);
    std::vector<Complex> ca(7), cb(7);
    for (auto& c : ca) c = rng.next_complex_normal();
    for (auto& c : cb) c = rng.next_complex_normal();
    const TaylorSeries a(center, ca), b(center, cb);
    const Complex s1 = rng.next_complex_normal(), s2 = rng.next_complex_normal();
    const TaylorSeries lhs = ode_apply(a * s1 + b * s2, lambda, mu);
    const TaylorSeries rhs = ode_apply(a, lambda, mu) * s1 + ode_apply(b, lambda, mu) * s2;
    for (int k = 0; k <= lhs.order(); ++k)
      CHECK(std::abs(lhs.coeff(k) - rhs.coeff(k)) <= 1e-12 * (1.0 + std::abs(rhs.coeff(k))));
  }
}

TEST_CASE("cascade residuals certify the closed forms") {
  // lambda = mu = -1/2, r = 2, f = log^3 z at center e:
  // L f = -3 log z, so properness at e is 3 and L^2 f = 0
  const HolomorphicCase lem = HolomorphicCase::make(-0.5, -0.5, 2, 1.0, 0.0);
  const auto [zero_lem, prop_lem] = ode_cascade_residual(lem, std::exp(1.0), 6);
  CHECK(zero_lem <= 1e-10);
  CHECK(prop_lem == Approx(3.0).epsilon(1e-10));

  // Generic r = 1: f = z^(1-lambda/mu), properness = |f(center)|
  const HolomorphicCase gen = HolomorphicCase::make(-8.0 / 3.0, -2.0 / 3.0, 1, 1.0, 0.0);
  const Complex center(1.2, 0.4);
  const auto [zero_gen, prop_gen] = ode_cascade_residual(gen, center, 4);
  CHECK(zero_gen <= 1e-10);
  const Complex expected = std::exp(Complex(-3.0) * std::log(center));
  CHECK(prop_gen == Approx(std::abs(expected)).epsilon(1e-9));

  // MuZero branch: the ODE oracle is its only certification path
  for (int r : {1, 2, 3}) {
    const HolomorphicCase mz = HolomorphicCase::make(1.0, 0.0, r, 1.0, 0.0);
    const auto [zero_mz, prop_mz] = ode_cascade_residual(mz, Complex(1.4, 0.3), 2 * r + 2);
    CHECK(zero_mz <= 1e-9);
    CHECK(prop_mz > 1e-6);
  }
  // at r = 2 with mu = 0, L(c1 log z) is the constant lambda c1
  const HolomorphicCase mz2 = HolomorphicCase::make(Complex(0.0, 2.0), 0.0, 2, Complex(1.5, 0.0), 0.0);
  const auto [zero2, prop2] = ode_cascade_residual(mz2, Complex(0.9, 1.1), 6);
  CHECK(zero2 <= 1e-12);
  CHECK(prop2 == Approx(3.0).epsilon(1e-12));  // |lambda c1| = |2i| * 1.5

  CHECK_THROWS_AS(ode_cascade_residual(lem, std::exp(1.0), 3), std::invalid_argument);
  CHECK_THROWS_AS(ode_cascade_residual(lem, Complex(-1.0, 0.0), 8), EvaluationDomainError);
}

TEST_CASE("cascade sweep over catalog pairs at seeded centers") {
  const std::pair<double, double> pairs[] = {
      {-8.0 / 3.0, -2.0 / 3.0},  // su:3
      {2.0 / 3.0, -1.0 / 3.0},   // slr:3
      {-2.5, -0.5},              // sp:2
      {0.5, -0.5},               // spr:2
      {4.0 / 3.0, -2.0 / 3.0},   // suu:1,2
      {-1.25, -0.25},            // sustar:2
      {-0.5, -0.5},              // sostar:2 / spp:1,1 / soo:3,1
  };
  RandomStream rng(20250101);
  for (const auto& [l, m] : pairs) {
    for (int r : {1, 2, 3}) {
      double max_zero = 0.0, max_f = 0.0;
      int nonzero = 0;
      const int centers = 40;
      for (int k = 0; k < centers; ++k) {
        const Complex center = random_center(rng);
        const HolomorphicCase h = HolomorphicCase::make(l, m, r, 1.0, 1.0);
        const auto [zero_res, prop] = ode_cascade_residual(h, center, 2 * r + 2);
        max_zero = std::max(max_zero, zero_res);
        max_f = std::max(max_f, std::abs(eval_holomorphic(h, center)));
        if (prop > 1e-6) ++nonzero;
      }
      INFO("lambda=" << l << " mu=" << m << " r=" << r);
      CHECK(max_zero <= 1e-9 * (1.0 + max_f));
      CHECK(nonzero >= int(0.9 * centers));
    }
  }
}

TEST_CASE("fd laplacian agrees with the jet laplacian") {
  const ScalarField c = constant_field(Complex(1.0, -2.0));
  const AlgebraBasis so3 = algebra_basis(GroupSpec::parse("so:3"));
  CHECK(std::abs(fd_laplacian(c, so3, Matrix::Identity(3, 3), 1e-2)) <= 1e-10);

  // SO(2) closed form -phi(p)/2
  const GroupSpec so2 = GroupSpec::parse("so:2");
  const AlgebraBasis b2 = algebra_basis(so2);
  EigenFamily fam2;
  fam2.spec = so2;
  fam2.coeff = Matrix::Zero(2, 2);
  fam2.coeff(0, 0) = 1.0;
  fam2.coeff(0, 1) = Complex(0.0, 1.0);
  const ScalarField phi2 = make_eigenfunction(fam2);
  const Matrix p2 = random_point(b2, 17, 0.5);
  CHECK(std::abs(fd_laplacian(phi2, b2, p2, 1e-2) - (-0.5) * phi2.value_at(p2)) <= 1e-6);

  // cross-oracle sweep: 10 points per group
  const char* groups[] = {"so:4", "su:3", "sp:2", "slr:3", "sostar:2",
                          "spr:2", "suu:1,2", "spp:1,1", "sustar:2", "soo:2,2"};
  for (const char* text : groups) {
    const GroupSpec spec = GroupSpec::parse(text);
    const AlgebraBasis basis = algebra_basis(spec);
    const EigenFamily fam = gen_params(spec, 1, derive_seed(300, text));
    const ScalarField phi = make_eigenfunction(fam);
    for (int k = 0; k < 10; ++k) {
      const Matrix p = random_point(basis, derive_seed(derive_seed(301, text), std::uint64_t(k)), 0.3);
      const Complex jet = laplacian(phi, basis, p);
      const Complex fd = fd_laplacian(phi, basis, p, 1e-2);
      INFO(text << " point " << k);
      CHECK(std::abs(jet - fd) <= 1e-5);
    }
  }
}
