#include <doctest.h>

#include <cmath>
#include <random>

#include "levgas/master_equation.hpp"

using namespace levgas;

namespace {

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return hermitize(a);
}

ComplexMatrix random_density(int n, std::mt19937_64& rng) {
  ComplexMatrix a = random_hermitian(n, rng);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

LevelState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  LevelState s;
  s.x.resize(n);
  for (int i = 0; i < n; ++i) s.x[i] = 1.5 * i + 0.3 * gauss(rng);
  s.v.resize(n);
  for (int i = 0; i < n; ++i) s.v[i] = gauss(rng);
  s.l = ComplexMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = m + 1; k < n; ++k) {
      const Complex z(gauss(rng), gauss(rng));
      s.l(m, k) = z;
      s.l(k, m) = -std::conj(z);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("pure dephasing at lambda_dot = 0") {
  LevelState s;
  s.x.resize(2);
  s.x << 0.0, 1.0;
  s.v = RealVector::Zero(2);
  s.l = ComplexMatrix::Zero(2, 2);
  s.l(0, 1) = Complex(0.4, 0.1);
  s.l(1, 0) = -std::conj(s.l(0, 1));

  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  rho(0, 1) = 0.5;
  rho(1, 0) = 0.5;

  const ComplexMatrix out = rho_rhs(s, rho, 0.0);
  CHECK(out(0, 0) == Complex(0.0, 0.0));
  CHECK(out(1, 1) == Complex(0.0, 0.0));
  // -i (x_0 - x_1) rho_01 = -i (-1) 0.5 = +0.5 i
  CHECK(out(0, 1).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(out(0, 1).imag() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("l = 0 freezes occupations") {
  std::mt19937_64 rng(5);
  LevelState s = random_state(4, rng);
  s.l.setZero();
  const ComplexMatrix rho = random_density(4, rng);
  const ComplexMatrix out = rho_rhs(s, rho, 0.7);
  for (int u = 0; u < 4; ++u) {
    CHECK(std::abs(out(u, u)) == 0.0);
    for (int w = 0; w < 4; ++w) {
      if (u == w) continue;
      const Complex expected = Complex(0.0, -(s.x[u] - s.x[w])) * rho(u, w);
      CHECK(std::abs(out(u, w) - expected) < 1e-15);
    }
  }
}

TEST_CASE("rhs is traceless and Hermitian-compatible") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const LevelState s = random_state(4, rng);
    const ComplexMatrix rho = random_density(4, rng);
    const ComplexMatrix dh = random_hermitian(4, rng);
    const ComplexMatrix out = rho_rhs_noisy(s, rho, 0.9, dh);

    const double scale = out.cwiseAbs().maxCoeff();
    CHECK(std::abs(out.trace()) <= 1e-15 * std::max(scale, 1.0) * 4);
    for (int u = 0; u < 4; ++u) {
      for (int w = 0; w < 4; ++w) {
        CHECK(std::abs(out(u, w) - std::conj(out(w, u))) <= 1e-12 * std::max(scale, 1.0));
      }
    }
  }
}

TEST_CASE("two-level rhs trace cancels exactly") {
  std::mt19937_64 rng(61);
  const LevelState s = random_state(2, rng);
  const ComplexMatrix rho = random_density(2, rng);
  const ComplexMatrix out = rho_rhs(s, rho, 1.3);
  CHECK(out(0, 0).real() == -out(1, 1).real());
  CHECK(out(0, 0).imag() == 0.0);
  CHECK(out(1, 1).imag() == 0.0);
}

TEST_CASE("noise terms vanish for zero and identity dh") {
  std::mt19937_64 rng(7);
  const LevelState s = random_state(4, rng);
  const ComplexMatrix rho = random_density(4, rng);

  const ComplexMatrix base = rho_rhs(s, rho, 1.1);
  const ComplexMatrix with_zero = rho_rhs_noisy(s, rho, 1.1, ComplexMatrix::Zero(4, 4));
  CHECK((base - with_zero).cwiseAbs().maxCoeff() == 0.0);

  // identity noise enters only through its (vanishing) off-diagonal part
  const ComplexMatrix with_id =
      rho_rhs_noisy(s, rho, 1.1, 0.37 * ComplexMatrix::Identity(4, 4));
  CHECK((base - with_id).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unbounded window reproduces the noisy rhs bitwise") {
  std::mt19937_64 rng(8);
  const LevelState s = random_state(5, rng);
  const ComplexMatrix rho = random_density(5, rng);
  const ComplexMatrix dh = random_hermitian(5, rng);

  const ComplexMatrix full = rho_rhs_noisy(s, rho, 0.8, dh);
  const ComplexMatrix wide = rho_rhs_windowed(s, rho, 0.8, dh, WindowSpec::index(4));
  const ComplexMatrix unbounded =
      rho_rhs_windowed(s, rho, 0.8, dh, WindowSpec::unbounded());
  for (int u = 0; u < 5; ++u) {
    for (int w = 0; w < 5; ++w) {
      CHECK(full(u, w) == wide(u, w));
      CHECK(full(u, w) == unbounded(u, w));
    }
  }
}

TEST_CASE("zero window leaves only dephasing") {
  std::mt19937_64 rng(9);
  const LevelState s = random_state(4, rng);
  const ComplexMatrix rho = random_density(4, rng);
  const ComplexMatrix dh = random_hermitian(4, rng);
  const ComplexMatrix out = rho_rhs_windowed(s, rho, 1.7, dh, WindowSpec::index(0));
  for (int u = 0; u < 4; ++u) {
    for (int w = 0; w < 4; ++w) {
      const Complex expected = Complex(0.0, -(s.x[u] - s.x[w])) * rho(u, w);
      CHECK(std::abs(out(u, w) - expected) == 0.0);
    }
  }
}

TEST_CASE("energy window matches the index window on an even ladder") {
  std::mt19937_64 rng(10);
  LevelState s = random_state(4, rng);
  for (int i = 0; i < 4; ++i) s.x[i] = 2.0 * i;  // gaps exactly 2
  const ComplexMatrix rho = random_density(4, rng);
  const ComplexMatrix dh = random_hermitian(4, rng);
  const ComplexMatrix by_index = rho_rhs_windowed(s, rho, 0.6, dh, WindowSpec::index(1));
  const ComplexMatrix by_energy =
      rho_rhs_windowed(s, rho, 0.6, dh, WindowSpec::energy(2.5));
  CHECK((by_index - by_energy).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("occupation flow matches the diagonal of the windowed rhs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const LevelState s = random_state(4, rng);
    const ComplexMatrix rho = random_density(4, rng);
    const ComplexMatrix dh = random_hermitian(4, rng);
    for (const WindowSpec& w :
         {WindowSpec::unbounded(), WindowSpec::index(1), WindowSpec::index(2)}) {
      const ComplexMatrix full = rho_rhs_windowed(s, rho, 1.2, dh, w);
      const RealVector occ = occupation_rhs(s, rho, 1.2, dh, w);
      double scale = std::max(1.0, occ.cwiseAbs().maxCoeff());
      for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(full(k, k).imag()) == 0.0);
        CHECK(std::abs(full(k, k).real() - occ[k]) <= 1e-12 * scale);
      }
      CHECK(std::abs(occ.sum()) <= 1e-14 * scale * 4);
    }
  }
}

TEST_CASE("occupation flow is zero for a diagonal rho") {
  std::mt19937_64 rng(12);
  const LevelState s = random_state(4, rng);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 0.4;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.2;
  rho(3, 3) = 0.1;
  const RealVector occ =
      occupation_rhs(s, rho, 1.0, ComplexMatrix::Zero(4, 4), WindowSpec::unbounded());
  // the commutator-like numerators vanish when all coherences are zero
  CHECK(occ.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator is anti-Hermitian up to the dephasing diagonal") {
  std::mt19937_64 rng(13);
  const LevelState s = random_state(4, rng);
  const ComplexMatrix dh = random_hermitian(4, rng);
  const ComplexMatrix a =
      evolution_generator(s, 0.85, dh, WindowSpec::unbounded(), DenominatorPolicy{});
  CHECK((a + a.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  for (int u = 0; u < 4; ++u) {
    CHECK(a(u, u) == Complex(0.0, -s.x[u]));
  }
  // the commutator with the generator reproduces the rhs
  const ComplexMatrix rho = random_density(4, rng);
  const ComplexMatrix via_generator = a * rho - rho * a;
  const ComplexMatrix direct = rho_rhs_noisy(s, rho, 0.85, dh);
  CHECK((via_generator - direct).cwiseAbs().maxCoeff() <=
        1e-13 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
}
