#pragma once

// Ordered-product factorization of exponentials in span{I, x^2, x d, d^2}.
//
//   exp[t (b1 I + b2 x^2 + b3 x d + b4 d^2)]
//     = exp[delta] exp[i alpha x^2] exp[beta x d] exp[i gamma d^2]
//
// Closed forms are provided for the squeeze and the harmonic-oscillator time
// displacement; arbitrary (also time-dependent) generators go through the
// coefficient ODE integrated with fixed-step RK4.

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace opfactor {

using cplx = std::complex<double>;

/// z = r e^{i phi} = z1 + i z2.
class SqueezeParameter {
 public:
  SqueezeParameter() = default;
  /// Throws DomainError for r < 0 or non-finite input.
  SqueezeParameter(double r, double phi);

  double r() const noexcept { return r_; }
  double phi() const noexcept { return phi_; }
  double z1() const noexcept { return r_ * std::cos(phi_); }
  double z2() const noexcept { return r_ * std::sin(phi_); }
  cplx z() const noexcept { return std::polar(r_, phi_); }

 private:
  double r_ = 0.0;
  double phi_ = 0.0;
};

/// Weights of I, x^2, x d, d^2 in the generator.
struct GeneratorCoefficients {
  cplx b1{}, b2{}, b3{}, b4{};

  /// -z1 (x d + 1/2) + i z2 (x^2 + d^2) / 2
  static GeneratorCoefficients squeeze(const SqueezeParameter& z);
  /// -i (x^2 - d^2) / 2 = -i (a^dag a + 1/2)
  static GeneratorCoefficients oscillator();

  bool operator==(const GeneratorCoefficients&) const = default;
};

using GeneratorFunction = std::function<GeneratorCoefficients(double t)>;

struct FactorizationCoefficients {
  cplx delta{}, alpha{}, beta{}, gamma{};
  double t = 0.0;

  std::array<cplx, 4> as_array() const { return {delta, alpha, beta, gamma}; }
  bool is_zero() const {
    return delta == cplx{} && alpha == cplx{} && beta == cplx{} && gamma == cplx{};
  }
  /// exp(2 delta - beta); identically 1 for unitary families.
  cplx unitarity_residue() const { return std::exp(2.0 * delta - beta); }
};

/// Largest |component difference| between two coefficient sets.
double max_abs_difference(const FactorizationCoefficients& a, const FactorizationCoefficients& b);

/// Time derivatives (d delta, d alpha, d beta, d gamma)/dt.
struct CoefficientRates {
  cplx delta{}, alpha{}, beta{}, gamma{};
};

/// Samples (t, coefficients) with strictly increasing t starting from zero
/// coefficients. Built only by the integrator.
class CoefficientTrajectory {
 public:
  const std::vector<FactorizationCoefficients>& samples() const noexcept { return samples_; }
  const FactorizationCoefficients& front() const { return samples_.front(); }
  const FactorizationCoefficients& back() const { return samples_.back(); }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  friend CoefficientTrajectory integrate_wei_norman(const GeneratorFunction&, double, int, double);
  std::vector<FactorizationCoefficients> samples_;
};

/// cosh(r t) + (z1/r) sinh(r t); z1/r -> cos(phi) at r = 0.
double squeeze_scale(const SqueezeParameter& z, double t);

/// e^r cos^2(phi/2) + e^{-r} sin^2(phi/2), the t = 1 value of squeeze_scale.
double squeeze_scale_half_angle(const SqueezeParameter& z);

/// alpha = gamma = (z2 / 2r) sinh(rt) / S(t), beta = -ln S(t), delta = beta / 2.
FactorizationCoefficients squeeze_factorization(const SqueezeParameter& z, double t);

/// alpha = -tan(t)/2, beta = -ln cos t, gamma = tan(t)/2, delta = beta/2.
/// Throws SingularityError when |cos t| < cos_epsilon. For cos t < 0 the
/// logarithm takes its principal branch.
FactorizationCoefficients time_displacement_factorization(double t, double cos_epsilon = 1e-9);

/// Right-hand side of the coefficient ODE, solved for the derivatives:
///   alpha' = -i b2 + 2 b3 alpha + 4i b4 alpha^2
///   beta'  = b3 + 4i b4 alpha
///   gamma' = -i b4 e^{2 beta}
///   delta' = b1 + 2i b4 alpha
CoefficientRates wei_norman_rhs(const FactorizationCoefficients& c, const GeneratorCoefficients& b);

/// Classical RK4 with `steps` equal steps from t = 0 to t_end. Throws
/// DomainError for steps < 1 or non-finite t_end, and BlowUpError once any
/// coefficient magnitude exceeds `bound`.
CoefficientTrajectory integrate_wei_norman(const GeneratorFunction& b, double t_end, int steps,
                                           double bound = 1e12);
CoefficientTrajectory integrate_wei_norman(const GeneratorCoefficients& b, double t_end, int steps,
                                           double bound = 1e12);

}  // namespace opfactor
