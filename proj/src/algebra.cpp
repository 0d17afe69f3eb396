#include "opfactor/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
constexpr cplx I{0.0, 1.0};

FactorizationCoefficients advance(const FactorizationCoefficients& c, const CoefficientRates& k,
                                  double h) {
  FactorizationCoefficients out;
  out.delta = c.delta + h * k.delta;
  out.alpha = c.alpha + h * k.alpha;
  out.beta = c.beta + h * k.beta;
  out.gamma = c.gamma + h * k.gamma;
  out.t = c.t + h;
  return out;
}

double max_magnitude(const FactorizationCoefficients& c) {
  double m = 0.0;
  for (const auto& v : c.as_array()) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) return a;
    m = std::max(m, a);
  }
  return m;
}
}  // namespace

SqueezeParameter::SqueezeParameter(double r, double phi) : r_(r), phi_(phi) {
  if (!std::isfinite(r) || !std::isfinite(phi)) throw DomainError("squeeze parameter must be finite");
  if (r < 0.0) throw DomainError("squeeze magnitude r must be >= 0");
}

GeneratorCoefficients GeneratorCoefficients::squeeze(const SqueezeParameter& z) {
  const double z1 = z.z1();
  const double z2 = z.z2();
  return {cplx(-z1 / 2.0), I * (z2 / 2.0), cplx(-z1), I * (z2 / 2.0)};
}

GeneratorCoefficients GeneratorCoefficients::oscillator() {
  return {cplx{}, -I / 2.0, cplx{}, I / 2.0};
}

double max_abs_difference(const FactorizationCoefficients& a, const FactorizationCoefficients& b) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double squeeze_scale(const SqueezeParameter& z, double t) {
  const double rt = z.r() * t;
  // z1 / r = cos(phi) for every r, including the r = 0 limit.
  return std::cosh(rt) + std::cos(z.phi()) * std::sinh(rt);
}

double squeeze_scale_half_angle(const SqueezeParameter& z) {
  const double c = std::cos(z.phi() / 2.0);
  const double s = std::sin(z.phi() / 2.0);
  return std::exp(z.r()) * c * c + std::exp(-z.r()) * s * s;
}

FactorizationCoefficients squeeze_factorization(const SqueezeParameter& z, double t) {
  const double scale = squeeze_scale(z, t);
  if (!(scale > 0.0)) {
    std::ostringstream msg;
    msg << "squeeze scale " << scale << " <= 0 at t = " << t;
    throw DomainError(msg.str());
  }
  // (z2 / r) sinh(rt) = sin(phi) sinh(rt), finite as r -> 0.
  const double ratio = std::sin(z.phi()) * std::sinh(z.r() * t) / (2.0 * scale);
  FactorizationCoefficients c;
  c.t = t;
  c.alpha = ratio;
  c.gamma = ratio;
  c.beta = -std::log(scale);
  c.delta = c.beta / 2.0;
  return c;
}

FactorizationCoefficients time_displacement_factorization(double t, double cos_epsilon) {
  const double c = std::cos(t);
  if (std::abs(c) < cos_epsilon) {
    std::ostringstream msg;
    msg << "time displacement is singular at t = " << t << " (|cos t| = " << std::abs(c)
        << "); compose shorter substeps";
    throw SingularityError(msg.str());
  }
  FactorizationCoefficients out;
  out.t = t;
  if (t == 0.0) return out;
  const double tan_t = std::tan(t);
  out.alpha = -tan_t / 2.0;
  out.gamma = tan_t / 2.0;
  out.beta = -std::log(cplx(c));
  out.delta = out.beta / 2.0;
  return out;
}

CoefficientRates wei_norman_rhs(const FactorizationCoefficients& c, const GeneratorCoefficients& b) {
  CoefficientRates d;
  d.beta = b.b3 + 4.0 * I * b.b4 * c.alpha;
  d.alpha = -I * b.b2 + 2.0 * b.b3 * c.alpha + 4.0 * I * b.b4 * c.alpha * c.alpha;
  d.gamma = -I * b.b4 * std::exp(2.0 * c.beta);
  d.delta = b.b1 + 2.0 * I * b.b4 * c.alpha;
  return d;
}

CoefficientTrajectory integrate_wei_norman(const GeneratorFunction& b, double t_end, int steps,
                                           double bound) {
  if (steps < 1) throw DomainError("integrate_wei_norman: steps must be >= 1");
  if (!std::isfinite(t_end)) throw DomainError("integrate_wei_norman: t_end must be finite");

  CoefficientTrajectory traj;
  traj.samples_.reserve(static_cast<std::size_t>(steps) + 1);
  traj.samples_.emplace_back();

  const double h = t_end / steps;
  FactorizationCoefficients c;
  for (int i = 0; i < steps; ++i) {
    const double t0 = h * i;
    c.t = t0;
    const auto k1 = wei_norman_rhs(c, b(t0));
    const auto k2 = wei_norman_rhs(advance(c, k1, h / 2.0), b(t0 + h / 2.0));
    const auto k3 = wei_norman_rhs(advance(c, k2, h / 2.0), b(t0 + h / 2.0));
    const auto k4 = wei_norman_rhs(advance(c, k3, h), b(t0 + h));

    c.delta += h / 6.0 * (k1.delta + 2.0 * k2.delta + 2.0 * k3.delta + k4.delta);
    c.alpha += h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
    c.beta += h / 6.0 * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta);
    c.gamma += h / 6.0 * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma);
    // Evaluate t from the step index so the terminal sample lands on t_end.
    c.t = (i + 1 == steps) ? t_end : h * (i + 1);

    const double m = max_magnitude(c);
    if (!(m <= bound)) {
      std::ostringstream msg;
      msg << "coefficient magnitude " << m << " exceeds " << bound << " at t = " << c.t
          << " (integrating through a caustic?)";
      throw BlowUpError(msg.str());
    }
    traj.samples_.push_back(c);
  }
  return traj;
}

CoefficientTrajectory integrate_wei_norman(const GeneratorCoefficients& b, double t_end, int steps,
                                           double bound) {
  return integrate_wei_norman([b](double) { return b; }, t_end, steps, bound);
}

}  // namespace opfactor
