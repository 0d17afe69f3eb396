#include "opfactor/analytic.hpp"

#include <cmath>
#include <numbers>

#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
constexpr cplx I{0.0, 1.0};
const double kPiQuarter = std::pow(std::numbers::pi, 0.25);
}  // namespace

EvenOddSpec::EvenOddSpec(double x0_, double s_, int sign_) : x0(x0_), s(s_), sign(sign_) {
  if (!(s_ > 0.0) || !std::isfinite(s_)) throw DomainError("even/odd state needs s > 0");
  if (sign_ != 1 && sign_ != -1) throw DomainError("even/odd sign must be +1 or -1");
  if (!std::isfinite(x0_)) throw DomainError("even/odd x0 must be finite");
}

cplx psi0(double x) { return std::exp(-x * x / 2.0) / kPiQuarter; }

double squeeze_kappa(const SqueezeParameter& z) {
  const double scale = squeeze_scale(z, 1.0);
  // z2 / r = sin(phi) keeps the r -> 0 limit finite.
  return std::sin(z.phi()) * std::sinh(z.r()) / (2.0 * scale);
}

cplx psi_ss(double x, const SqueezedStateSpec& spec) {
  const double scale = squeeze_scale(spec.z, 1.0);
  const double kappa = squeeze_kappa(spec.z);
  const cplx w = 1.0 + 2.0 * I * kappa;
  const double u = x - spec.x0;
  const cplx exponent = -u * u * (1.0 / (2.0 * scale * scale * w) - I * kappa) + I * (spec.p0 * x);
  return std::exp(-I * (spec.x0 * spec.p0 / 2.0)) / (kPiQuarter * std::sqrt(scale * w)) * std::exp(exponent);
}

cplx squeezed_real(double x, double x0, double p0, double s) {
  const double u = x - x0;
  return std::exp(-I * (x0 * p0 / 2.0)) / std::sqrt(std::sqrt(std::numbers::pi) * s) *
         std::exp(-u * u / (2.0 * s * s) + I * (p0 * x));
}

cplx coherent_state(double x, double x0, double p0) { return squeezed_real(x, x0, p0, 1.0); }

cplx coherent_evolved(double x, double t, double x0, double p0) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double center = x0 * c + p0 * s;
  const double momentum = p0 * c - x0 * s;
  const double u = x - center;
  return std::exp(-I * (t / 2.0)) / kPiQuarter * std::exp(-u * u / 2.0) * std::exp(I * (x * momentum)) *
         std::exp(-I * (center * momentum / 2.0));
}

double even_odd_width_squared(double t, double s) {
  const double c = std::cos(t);
  const double sn = std::sin(t);
  return s * s * c * c + sn * sn / (s * s);
}

cplx psi_spm(double x, double t, const EvenOddSpec& spec, EvenOddNormalization normalization) {
  const double c = std::cos(t);
  const double sn = std::sin(t);
  const double s = spec.s;
  const double s2 = s * s;
  const double denom = s2 * s2 * c * c + sn * sn;  // s^2 d^2

  const double overlap = normalization == EvenOddNormalization::exact ? std::exp(-spec.x0 * spec.x0 / s2)
                                                                       : std::exp(-spec.x0 * spec.x0 * c * c);
  const cplx prefactor = std::sqrt(s / (2.0 * std::sqrt(std::numbers::pi) * (1.0 + spec.sign * overlap)) *
                                   (s2 * c - I * sn) / denom);

  // Exponent of the branch centred at +/- x0 cos t with the
  // -(i/2) tan(t) x^2 term folded in:
  //   -(x -/+ x0 c)^2 s^2 / (2 D) + (i sn / (2 D)) [x^2 c (1 - s^4) -/+ 2 x x0 + x0^2 c]
  auto branch = [&](double side) {
    const double u = x - side * spec.x0 * c;
    const double real_part = -u * u * s2 / (2.0 * denom);
    const double imag_part =
        sn / (2.0 * denom) * (x * x * c * (1.0 - s2 * s2) - side * 2.0 * x * spec.x0 + spec.x0 * spec.x0 * c);
    return std::exp(cplx(real_part, imag_part));
  };
  return prefactor * (branch(1.0) + static_cast<double>(spec.sign) * branch(-1.0));
}

double rho_spm(double x, double t, const EvenOddSpec& spec, EvenOddNormalization normalization) {
  const double c = std::cos(t);
  const double sn = std::sin(t);
  const double s2 = spec.s * spec.s;
  const double d2 = even_odd_width_squared(t, spec.s);
  const double d = std::sqrt(d2);
  const double x0 = spec.x0;
  const double sign = spec.sign;
  const double overlap_weight = normalization == EvenOddNormalization::quoted ? d : 1.0;
  const double envelope = std::exp(-(x * x + x0 * x0 * c * c) / d2) /
                          (std::sqrt(std::numbers::pi) * d * (1.0 + sign * overlap_weight * std::exp(-x0 * x0 / s2)));
  return envelope * (std::cosh(2.0 * x * x0 * c / d2) + sign * std::cos(2.0 * x * x0 * sn / (d2 * s2)));
}

double rho_spm_integral(double t, const EvenOddSpec& spec) {
  const double d = std::sqrt(even_odd_width_squared(t, spec.s));
  const double e = std::exp(-spec.x0 * spec.x0 / (spec.s * spec.s));
  return (1.0 + spec.sign * e) / (1.0 + spec.sign * d * e);
}

cplx box_mode_phase(int n, double t) {
  if (n < 1) throw DomainError("box mode index must be >= 1");
  const double nn = static_cast<double>(n);
  return std::exp(-I * (std::numbers::pi * std::numbers::pi * nn * nn * t / 2.0));
}

WaveFunction normalized_state(const Grid& grid, const std::function<cplx(double)>& f) {
  WaveFunction psi = WaveFunction::sample(grid, f);
  const double n = psi.norm();
  if (n > 0.0) psi *= 1.0 / n;
  return psi;
}

std::vector<double> normalized_density(const Grid& grid, const std::function<double(double)>& rho) {
  std::vector<double> out(grid.size());
  double total = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = rho(grid.x(j));
    total += out[j];
  }
  total *= grid.dx();
  if (total > 0.0)
    for (auto& v : out) v /= total;
  return out;
}

cplx even_odd_initial(double x, const EvenOddSpec& spec) {
  const double e = std::exp(-spec.x0 * spec.x0 / (spec.s * spec.s));
  const double norm = std::sqrt(2.0 * (1.0 + spec.sign * e));
  return (squeezed_real(x, spec.x0, 0.0, spec.s) + static_cast<double>(spec.sign) * squeezed_real(x, -spec.x0, 0.0, spec.s)) /
         norm;
}

}  // namespace opfactor
