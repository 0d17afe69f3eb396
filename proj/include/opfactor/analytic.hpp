#pragma once

// Closed-form reference states in natural oscillator units.
//
// Functions named after a closed form evaluate it exactly as written,
// including its normalization prefactor. Comparisons should go through the
// normalized_* helpers, which rescale by grid quadrature.

#include <functional>

#include "opfactor/algebra.hpp"
#include "opfactor/grid.hpp"

namespace opfactor {

/// Displacement (x0, p0) and squeeze z of D(x0, p0) S(z) psi0.
struct SqueezedStateSpec {
  double x0 = 0.0;
  double p0 = 0.0;
  SqueezeParameter z;
};

/// (psi(x0) +/- psi(-x0)) built from real-z, p0 = 0 squeezed states.
struct EvenOddSpec {
  /// Throws DomainError for s <= 0 or sign not +/-1.
  EvenOddSpec(double x0, double s, int sign);

  double x0;
  double s;  ///< e^r
  int sign;
};

/// pi^{-1/4} exp(-x^2/2)
cplx psi0(double x);

/// kappa = z2 sinh(r) / (2 r S), with S = squeeze_scale(z, 1).
double squeeze_kappa(const SqueezeParameter& z);

/// D(x0, p0) S(z) psi0 in closed form.
cplx psi_ss(double x, const SqueezedStateSpec& spec);

/// Real-z reduction: exp(-i x0 p0 / 2) [sqrt(pi) s]^{-1/2} exp(-(x-x0)^2/(2 s^2) + i p0 x).
cplx squeezed_real(double x, double x0, double p0, double s);

/// Coherent state (s = 1).
cplx coherent_state(double x, double x0, double p0);

/// T(t) applied to the coherent state, in closed form.
cplx coherent_evolved(double x, double t, double x0, double p0);

/// d^2 = s^2 cos^2 t + sin^2 t / s^2
double even_odd_width_squared(double t, double s);

/// Normalization constant used in the even/odd prefactor
/// [s (s^2 cos t - i sin t) / (2 sqrt(pi) N (s^4 cos^2 t + sin^2 t))]^{1/2}.
enum class EvenOddNormalization {
  /// N = 1 +/- exp(-x0^2 / s^2): unit norm for every t.
  exact,
  /// N = 1 +/- exp(-x0^2 cos^2 t), as the closed form is usually quoted.
  /// Time dependent, and zero for the odd state at odd multiples of pi/2.
  quoted,
};

/// T(t) applied to the even/odd state. The exponent is evaluated in a
/// regularized form in which the divergent tan(t) x^2 pieces have been
/// cancelled analytically, so the function is finite for all t including
/// odd multiples of pi/2 (with the exact normalization).
cplx psi_spm(double x, double t, const EvenOddSpec& spec,
             EvenOddNormalization normalization = EvenOddNormalization::exact);

/// Density of the even/odd state. The quoted form carries
/// 1 +/- d exp(-x0^2/s^2) in its denominator and integrates to
/// rho_spm_integral(t); the exact form drops the d and integrates to 1.
double rho_spm(double x, double t, const EvenOddSpec& spec,
               EvenOddNormalization normalization = EvenOddNormalization::quoted);

/// Integral of the quoted rho_spm over x: (1 +/- e^{-x0^2/s^2}) / (1 +/- d e^{-x0^2/s^2}).
double rho_spm_integral(double t, const EvenOddSpec& spec);

/// exp(-i pi^2 n^2 t / 2): phase of sin(pi n x) under exp(i t d^2 / 2).
/// Throws DomainError for n < 1.
cplx box_mode_phase(int n, double t);

/// Samples f on the grid and rescales to unit quadrature norm.
WaveFunction normalized_state(const Grid& grid, const std::function<cplx(double)>& f);

/// Samples a density on the grid and rescales to unit quadrature integral.
std::vector<double> normalized_density(const Grid& grid, const std::function<double(double)>& rho);

/// Even/odd state at t = 0 with exact normalization 2 (1 +/- e^{-x0^2/s^2}).
cplx even_odd_initial(double x, const EvenOddSpec& spec);

}  // namespace opfactor
