#include "pcb/numerical_flux.hpp"

#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"

using namespace pcb;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

ModeVector random_modes(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ModeVector u(n);
  for (double& v : u) v = dist(rng);
  return u;
}

double burgers_jump_residual(double f, double l, double r) {
  return f * (r - l) - (r * r * r - l * l * l) / 6.0;
}

}  // namespace

TEST_CASE("entropy conservative flux") {
  SUBCASE("scalar value") {
    TripleProductTensor t(0);
    const ModeVector f = ec_flux(ModeVector{1.0}, ModeVector{2.0}, t);
    CHECK(f[0] == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
  }
  SUBCASE("consistency") {
    std::mt19937 rng(2);
    for (int order : {0, 3, 7}) {
      TripleProductTensor t(order);
      const ModeVector u = random_modes(rng, order + 1);
      const ModeVector f = ec_flux(u, u, t);
      const ModeVector exact = flux(u, t);
      for (int k = 0; k <= order; ++k) CHECK(f[k] == doctest::Approx(exact[k]).epsilon(1e-13));
    }
  }
  SUBCASE("left-right symmetry") {
    std::mt19937 rng(3);
    TripleProductTensor t(4);
    for (int trial = 0; trial < 20; ++trial) {
      const ModeVector l = random_modes(rng, 5), r = random_modes(rng, 5);
      const ModeVector f1 = ec_flux(l, r, t), f2 = ec_flux(r, l, t);
      for (int k = 0; k < 5; ++k) CHECK(f1[k] == doctest::Approx(f2[k]).epsilon(1e-15));
    }
  }
  SUBCASE("jump identity across orders") {
    std::mt19937 rng(5);
    for (int order = 0; order <= 9; ++order) {
      TripleProductTensor t(order);
      double worst = 0.0;
      for (int trial = 0; trial < 200; ++trial) {
        const ModeVector l = random_modes(rng, order + 1), r = random_modes(rng, order + 1);
        const ModeVector f = ec_flux(l, r, t);
        worst = std::max(worst, std::abs(entropy_residual(l, r, f, t)));
      }
      INFO("order ", order);
      CHECK(worst <= 1e-12);
    }
  }
  SUBCASE("order mismatch rejected") {
    TripleProductTensor t(2);
    CHECK_THROWS_AS(ec_flux(ModeVector(3, 0.0), ModeVector(2, 0.0), t), std::invalid_argument);
  }
}

TEST_CASE("phase-space integral form coincides with the algebraic form") {
  std::mt19937 rng(7);
  for (int order : {0, 3, 6, 9}) {
    TripleProductTensor t(order);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const ModeVector l = random_modes(rng, order + 1), r = random_modes(rng, order + 1);
      const ModeVector a = ec_flux(l, r, t);
      const ModeVector b = tadmor_phase_integral(l, r, t);
      for (int k = 0; k <= order; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    INFO("order ", order);
    CHECK(worst <= 1e-13);
  }
  TripleProductTensor t0(0);
  CHECK(tadmor_phase_integral(ModeVector{1.0}, ModeVector{2.0}, t0)[0] ==
        doctest::Approx(7.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("dissipative flux") {
  SUBCASE("hand-evaluated scalar case") {
    TripleProductTensor t(0);
    // ec part 2/3, wave speed 2, jump -2
    const ModeVector f = llf_es_flux(ModeVector{2.0}, ModeVector{0.0}, t);
    CHECK(f[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(max_abs_eigenvalue(ModeVector{2.0}, t) == doctest::Approx(2.0));
  }
  SUBCASE("consistency and entropy inequality") {
    std::mt19937 rng(11);
    TripleProductTensor t(3);
    for (int trial = 0; trial < 200; ++trial) {
      const ModeVector l = random_modes(rng, 4), r = random_modes(rng, 4);
      const ModeVector f = llf_es_flux(l, r, t);
      CHECK(entropy_residual(l, r, f, t) <= 1e-12);
    }
    const ModeVector u = random_modes(rng, 4);
    const ModeVector f = llf_es_flux(u, u, t);
    const ModeVector exact = flux(u, t);
    for (int k = 0; k < 4; ++k) CHECK(f[k] == doctest::Approx(exact[k]).epsilon(1e-13));
  }
  SUBCASE("dissipation weight scales the penalty") {
    TripleProductTensor t(2);
    std::mt19937 rng(13);
    const ModeVector l = random_modes(rng, 3), r = random_modes(rng, 3);
    const ModeVector fe = ec_flux(l, r, t);
    const ModeVector f1 = llf_es_flux(l, r, t, 1.0);
    const ModeVector fh = llf_es_flux(l, r, t, 0.5);
    for (int k = 0; k < 3; ++k)
      CHECK(fh[k] - fe[k] == doctest::Approx(0.5 * (f1[k] - fe[k])).epsilon(1e-13).scale(1.0));
    CHECK_THROWS_AS(llf_es_flux(l, r, t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(llf_es_flux(l, r, t, 1.5), std::invalid_argument);
  }
}

TEST_CASE("per-order example fluxes") {
  std::mt19937 rng(17);
  SUBCASE("consistency for all orders and both scalar choices") {
    for (int order = 0; order <= 3; ++order) {
      TripleProductTensor t(order);
      const ModeVector u = random_modes(rng, order + 1);
      for (auto choice :
           {ScalarFluxChoice::EntropyConservative, ScalarFluxChoice::LocalLaxFriedrichs}) {
        const ModeVector f = example_flux(order, u, u, choice);
        const ModeVector exact = flux(u, t);
        for (int k = 0; k <= order; ++k) CHECK(f[k] == doctest::Approx(exact[k]).epsilon(1e-13));
      }
    }
  }
  SUBCASE("order 2 residual reduces to twice the scalar Burgers case") {
    TripleProductTensor t(2);
    for (int trial = 0; trial < 50; ++trial) {
      const ModeVector l = random_modes(rng, 3), r = random_modes(rng, 3);
      for (auto choice :
           {ScalarFluxChoice::EntropyConservative, ScalarFluxChoice::LocalLaxFriedrichs}) {
        const ModeVector f = example_flux(2, l, r, choice);
        const double res = entropy_residual(l, r, f, t);
        const double f00 = example_flux(0, ModeVector{l[0]}, ModeVector{r[0]}, choice)[0];
        const double f22 = example_flux(0, ModeVector{l[2]}, ModeVector{r[2]}, choice)[0];
        const double reduced = burgers_jump_residual(f00, l[0], r[0]) +
                               2.0 * kSqrt2 * burgers_jump_residual(f22, l[2], r[2]);
        CHECK(res == doctest::Approx(reduced).epsilon(1e-12).scale(1.0));
      }
    }
  }
  SUBCASE("order 3 with entropy conservative scalar parts is conservative") {
    TripleProductTensor t(3);
    for (int trial = 0; trial < 50; ++trial) {
      const ModeVector l = random_modes(rng, 4), r = random_modes(rng, 4);
      const ModeVector f = example_flux(3, l, r, ScalarFluxChoice::EntropyConservative);
      CHECK(std::abs(entropy_residual(l, r, f, t)) <= 1e-12);
      // dissipative scalar parts keep the one-sided bound
      const ModeVector g = example_flux(3, l, r, ScalarFluxChoice::LocalLaxFriedrichs);
      CHECK(entropy_residual(l, r, g, t) <= 1e-12);
    }
  }
  SUBCASE("orders above three are rejected") {
    CHECK_THROWS_AS(example_flux(4, ModeVector(5, 0.0), ModeVector(5, 0.0),
                                 ScalarFluxChoice::EntropyConservative),
                    std::invalid_argument);
  }
}

TEST_CASE("pair-style overloads match the span interface") {
  std::mt19937 rng(23);
  TripleProductTensor t(2);
  const InterfacePair pair{random_modes(rng, 3), random_modes(rng, 3)};
  CHECK(ec_flux(pair, t) == ec_flux(pair.left, pair.right, t));
  CHECK(llf_es_flux(pair, t, 0.5) == llf_es_flux(pair.left, pair.right, t, 0.5));
  const ModeVector f = tadmor_phase_integral(pair, t);
  CHECK(entropy_residual(pair, f, t) == entropy_residual(pair.left, pair.right, f, t));
}

TEST_CASE("entropy residual diagnostic") {
  TripleProductTensor t(3);
  std::mt19937 rng(19);
  const ModeVector l = random_modes(rng, 4), r = random_modes(rng, 4);
  CHECK(std::abs(entropy_residual(l, r, ec_flux(l, r, t), t)) <= 1e-13);
  CHECK(entropy_residual(l, r, llf_es_flux(l, r, t), t) <= 1e-13);
  // zero jump: residual vanishes for any flux value
  const ModeVector arbitrary = random_modes(rng, 4);
  CHECK(entropy_residual(l, l, arbitrary, t) == doctest::Approx(0.0).epsilon(1e-15));
}
