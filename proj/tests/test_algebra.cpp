#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "opfactor/algebra.hpp"
#include "opfactor/errors.hpp"

using namespace opfactor;

namespace {
constexpr double kPi = std::numbers::pi;

double component_error(cplx got, cplx want) { return std::abs(got - want); }
}  // namespace

TEST_CASE("squeeze parameter components") {
  const SqueezeParameter z(1.3, 0.4);
  CHECK(z.z1() * z.z1() + z.z2() * z.z2() == doctest::Approx(1.69).epsilon(1e-12));
  CHECK(std::abs(z.z() - cplx(z.z1(), z.z2())) < 1e-15);
  CHECK_THROWS_AS(SqueezeParameter(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(SqueezeParameter(std::nan(""), 0.0), DomainError);
}

TEST_CASE("squeeze scale values") {
  CHECK(squeeze_scale(SqueezeParameter(0.0, 2.1), 1.0) == 1.0);
  CHECK(squeeze_scale(SqueezeParameter(1.0, 0.0), 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(squeeze_scale(SqueezeParameter(1.0, kPi), 1.0) == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-14));
  CHECK(squeeze_scale(SqueezeParameter(0.7, 0.3), 0.0) == 1.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r_dist(0.0, 2.0), phi_dist(0.0, 2.0 * kPi);
  for (int k = 0; k < 200; ++k) {
    const SqueezeParameter z(r_dist(rng), phi_dist(rng));
    const double a = squeeze_scale(z, 1.0);
    const double b = squeeze_scale_half_angle(z);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
    CHECK(a > 0.0);
  }
}

TEST_CASE("squeeze factorization examples") {
  CHECK(squeeze_factorization(SqueezeParameter(0.0, 0.0), 1.0).is_zero());
  CHECK(squeeze_factorization(SqueezeParameter(0.9, 1.2), 0.0).is_zero());

  const auto real = squeeze_factorization(SqueezeParameter(1.0, 0.0), 1.0);
  CHECK(std::abs(real.alpha) < 1e-15);
  CHECK(std::abs(real.gamma) < 1e-15);
  CHECK(component_error(real.beta, -1.0) < 1e-14);
  CHECK(component_error(real.delta, -0.5) < 1e-14);

  const auto imag = squeeze_factorization(SqueezeParameter(1.0, kPi / 2.0), 1.0);
  CHECK(component_error(imag.alpha, std::tanh(1.0) / 2.0) < 1e-14);
  CHECK(component_error(imag.alpha, 0.3807970) < 1e-7);
  CHECK(component_error(imag.beta, -std::log(std::cosh(1.0))) < 1e-14);
  CHECK(component_error(imag.beta, -0.4337809) < 1e-7);
  CHECK(component_error(imag.delta, -0.2168904) < 1e-7);
  CHECK(imag.gamma == imag.alpha);
  CHECK(imag.delta == imag.beta / 2.0);

  const auto ode = integrate_wei_norman(GeneratorCoefficients::squeeze(SqueezeParameter(1.0, kPi / 2.0)), 1.0, 1000);
  CHECK(max_abs_difference(ode.back(), imag) < 1e-9);
}

TEST_CASE("time displacement examples") {
  CHECK(time_displacement_factorization(0.0).is_zero());

  const auto c = time_displacement_factorization(kPi / 4.0);
  CHECK(component_error(c.alpha, -0.5) < 1e-15);
  CHECK(component_error(c.gamma, 0.5) < 1e-15);
  CHECK(component_error(c.beta, 0.3465736) < 1e-7);
  CHECK(component_error(c.delta, 0.1732868) < 1e-7);
  CHECK(c.gamma == -c.alpha);

  CHECK_THROWS_AS(time_displacement_factorization(kPi / 2.0), SingularityError);
  CHECK_THROWS_AS(time_displacement_factorization(-1.5 * kPi), SingularityError);
  CHECK_NOTHROW(time_displacement_factorization(kPi / 2.0 - 1e-6));
  CHECK_THROWS_AS(time_displacement_factorization(kPi / 2.0 - 1e-6, 1e-5), SingularityError);

  // Past the caustic cos t < 0; the principal logarithm adds i pi to ln cos t.
  const auto far = time_displacement_factorization(2.0);
  CHECK(far.beta.imag() == doctest::Approx(-kPi));
  CHECK(std::abs(far.unitarity_residue() - 1.0) < 1e-12);
}

TEST_CASE("coefficient ODE right-hand side") {
  const FactorizationCoefficients zero;
  const auto none = wei_norman_rhs(zero, GeneratorCoefficients{});
  CHECK(none.alpha == cplx{});
  CHECK(none.beta == cplx{});
  CHECK(none.gamma == cplx{});
  CHECK(none.delta == cplx{});

  const auto sq = wei_norman_rhs(zero, GeneratorCoefficients::squeeze(SqueezeParameter(1.0, kPi / 2.0)));
  CHECK(component_error(sq.alpha, 0.5) < 1e-15);
  CHECK(std::abs(sq.beta) < 1e-15);
  CHECK(component_error(sq.gamma, 0.5) < 1e-15);
  CHECK(std::abs(sq.delta) < 1e-15);

  const auto osc = wei_norman_rhs(zero, GeneratorCoefficients::oscillator());
  CHECK(component_error(osc.alpha, -0.5) < 1e-15);
  CHECK(std::abs(osc.beta) < 1e-15);
  CHECK(component_error(osc.gamma, 0.5) < 1e-15);
  CHECK(std::abs(osc.delta) < 1e-15);

  // Squeeze family reduces to alpha' = -2 z2 alpha^2 - 2 z1 alpha + z2/2.
  const SqueezeParameter z(0.9, 0.7);
  FactorizationCoefficients c;
  c.alpha = 0.13;
  c.beta = -0.2;
  const auto rates = wei_norman_rhs(c, GeneratorCoefficients::squeeze(z));
  const double a = 0.13;
  CHECK(component_error(rates.alpha, -2.0 * z.z2() * a * a - 2.0 * z.z1() * a + z.z2() / 2.0) < 1e-15);

  // Oscillator: alpha' = -2 alpha^2 - 1/2, beta' = -2 alpha.
  const auto o = wei_norman_rhs(c, GeneratorCoefficients::oscillator());
  CHECK(component_error(o.alpha, -2.0 * a * a - 0.5) < 1e-15);
  CHECK(component_error(o.beta, -2.0 * a) < 1e-15);
}

TEST_CASE("closed forms satisfy the coefficient ODE") {
  // Central differences of the closed forms against the right-hand side.
  const double h = 1e-5;
  for (const SqueezeParameter& z : {SqueezeParameter(0.8, kPi / 3.0), SqueezeParameter(1.7, 2.5), SqueezeParameter(0.3, 4.0)}) {
    const auto b = GeneratorCoefficients::squeeze(z);
    for (double t : {0.2, 0.9, 1.6}) {
      const auto lo = squeeze_factorization(z, t - h);
      const auto hi = squeeze_factorization(z, t + h);
      const auto rates = wei_norman_rhs(squeeze_factorization(z, t), b);
      CHECK(std::abs((hi.alpha - lo.alpha) / (2 * h) - rates.alpha) < 1e-8);
      CHECK(std::abs((hi.beta - lo.beta) / (2 * h) - rates.beta) < 1e-8);
      CHECK(std::abs((hi.gamma - lo.gamma) / (2 * h) - rates.gamma) < 1e-8);
      CHECK(std::abs((hi.delta - lo.delta) / (2 * h) - rates.delta) < 1e-8);
    }
  }
  for (double t : {0.3, 1.0, 1.4}) {
    const auto lo = time_displacement_factorization(t - h);
    const auto hi = time_displacement_factorization(t + h);
    const auto rates = wei_norman_rhs(time_displacement_factorization(t), GeneratorCoefficients::oscillator());
    CHECK(std::abs((hi.alpha - lo.alpha) / (2 * h) - rates.alpha) < 1e-7);
    CHECK(std::abs((hi.beta - lo.beta) / (2 * h) - rates.beta) < 1e-7);
    CHECK(std::abs((hi.gamma - lo.gamma) / (2 * h) - rates.gamma) < 1e-7);
    CHECK(std::abs((hi.delta - lo.delta) / (2 * h) - rates.delta) < 1e-7);
  }
}

TEST_CASE("integrator against closed forms") {
  const auto zero = integrate_wei_norman(GeneratorCoefficients{}, 3.0, 10);
  CHECK(zero.size() == 11);
  for (const auto& s : zero.samples()) CHECK(s.is_zero());

  const SqueezeParameter z(0.8, kPi / 3.0);
  const auto traj = integrate_wei_norman(GeneratorCoefficients::squeeze(z), 1.0, 1000);
  CHECK(traj.front().is_zero());
  CHECK(traj.front().t == 0.0);
  CHECK(traj.back().t == 1.0);
  CHECK(max_abs_difference(traj.back(), squeeze_factorization(z, 1.0)) < 1e-8);
  for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.samples()[k].t > traj.samples()[k - 1].t);

  const auto osc = integrate_wei_norman(GeneratorCoefficients::oscillator(), 1.0, 1000);
  CHECK(max_abs_difference(osc.back(), time_displacement_factorization(1.0)) < 1e-8);

  // Negative end times run backwards from zero.
  const auto back = integrate_wei_norman(GeneratorCoefficients::oscillator(), -0.7, 500);
  CHECK(back.back().t == -0.7);
  CHECK(max_abs_difference(back.back(), time_displacement_factorization(-0.7)) < 1e-9);
}

TEST_CASE("random squeeze parameters: ODE and closed form agree") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> r_dist(0.0, 2.0), phi_dist(0.0, 2.0 * kPi);
  for (int k = 0; k < 20; ++k) {
    const SqueezeParameter z(r_dist(rng), phi_dist(rng));
    const auto ode = integrate_wei_norman(GeneratorCoefficients::squeeze(z), 1.0, 1000).back();
    CHECK(max_abs_difference(ode, squeeze_factorization(z, 1.0)) < 1e-7);
    CHECK(std::abs(ode.gamma - ode.alpha) < 1e-9);
    CHECK(std::abs(ode.delta - ode.beta / 2.0) < 1e-9);
    CHECK(std::abs(ode.unitarity_residue() - 1.0) < 1e-10);
  }
  for (double t : {-1.4, -0.5, 0.3, 0.7, 1.0, 1.4}) {
    const auto ode = integrate_wei_norman(GeneratorCoefficients::oscillator(), t, 1000).back();
    CHECK(max_abs_difference(ode, time_displacement_factorization(t)) < 1e-7);
  }
}

TEST_CASE("time-dependent generator") {
  // b(t) = f(t) b0 with f = 2t integrates to the constant generator at
  // time F(t) = t^2.
  const auto b0 = GeneratorCoefficients::oscillator();
  const GeneratorFunction ramp = [&](double t) {
    return GeneratorCoefficients{2 * t * b0.b1, 2 * t * b0.b2, 2 * t * b0.b3, 2 * t * b0.b4};
  };
  const auto traj = integrate_wei_norman(ramp, 1.1, 2000);
  CHECK(max_abs_difference(traj.back(), time_displacement_factorization(1.21)) < 1e-8);
}

TEST_CASE("integrator errors") {
  const auto osc = GeneratorCoefficients::oscillator();
  CHECK_THROWS_AS(integrate_wei_norman(osc, 1.0, 0), DomainError);
  CHECK_THROWS_AS(integrate_wei_norman(osc, std::numeric_limits<double>::infinity(), 10), DomainError);
  // Straight through the first caustic: tan t diverges.
  CHECK_THROWS_AS(integrate_wei_norman(osc, 2.0, 2000, 1e3), BlowUpError);
}

TEST_CASE("unitarity residue for both families") {
  for (double t : {0.1, 0.5, 1.2, 1.5})
    CHECK(std::abs(time_displacement_factorization(t).unitarity_residue() - 1.0) < 1e-10);
  for (double r : {0.1, 1.0, 2.0})
    for (double phi : {0.0, 1.0, 3.0})
      CHECK(std::abs(squeeze_factorization(SqueezeParameter(r, phi), 1.3).unitarity_residue() - 1.0) < 1e-10);
}
