#include "opfactor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
constexpr cplx I{0.0, 1.0};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DomainError("wavefunctions live on different grids");
}

// Multiplies the spectrum of psi by multiplier(k).
template <typename F>
WaveFunction spectral_multiply(const WaveFunction& psi, F&& multiplier) {
  std::vector<cplx> data = psi.samples();
  detail::fft_inplace(data, true);
  const auto& grid = psi.grid();
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= multiplier(grid.wavenumber(j)) * inv_n;
  detail::fft_inplace(data, false);
  return WaveFunction(grid, std::move(data));
}

// Trigonometric interpolation onto a grid `factor` times finer (same x_min).
std::vector<cplx> band_limited_upsample(const std::vector<cplx>& samples, std::size_t factor) {
  const std::size_t n = samples.size();
  const std::size_t m = n * factor;
  std::vector<cplx> spectrum = samples;
  detail::fft_inplace(spectrum, true);
  std::vector<cplx> fine(m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n / 2; ++j) fine[j] = spectrum[j] * inv_n;
  for (std::size_t j = n / 2 + 1; j < n; ++j) fine[m - (n - j)] = spectrum[j] * inv_n;
  fine[n / 2] = 0.5 * spectrum[n / 2] * inv_n;  // Nyquist bin split evenly
  fine[m - n / 2] = 0.5 * spectrum[n / 2] * inv_n;
  detail::fft_inplace(fine, false);
  return fine;
}

template <typename F>
WaveFunction pointwise_multiply(const WaveFunction& psi, F&& multiplier) {
  std::vector<cplx> data = psi.samples();
  const auto& grid = psi.grid();
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= multiplier(grid.x(j));
  return WaveFunction(grid, std::move(data));
}
}  // namespace

Grid::Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw DomainError("grid requires finite x_max > x_min");
  if (n < 16 || !is_power_of_two(n)) throw DomainError("grid size must be a power of two >= 16");
}

double Grid::wavenumber(std::size_t j) const noexcept {
  const double base = 2.0 * std::numbers::pi / length();
  const auto signed_j = j < n_ / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n_);
  return base * signed_j;
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw DomainError("sample count does not match grid size");
}

WaveFunction WaveFunction::sample(const Grid& grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> s(grid.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(grid.x(j));
  return WaveFunction(grid, std::move(s));
}

double WaveFunction::norm_squared() const {
  double sum = 0.0;
  for (const auto& v : samples_) sum += std::norm(v);
  return sum * grid_.dx();
}

double WaveFunction::norm() const { return std::sqrt(norm_squared()); }

std::vector<double> WaveFunction::density() const {
  std::vector<double> rho(samples_.size());
  std::transform(samples_.begin(), samples_.end(), rho.begin(), [](cplx v) { return std::norm(v); });
  return rho;
}

double WaveFunction::max_abs_difference(const WaveFunction& other) const {
  require_same_grid(grid_, other.grid_);
  double m = 0.0;
  for (std::size_t j = 0; j < samples_.size(); ++j) m = std::max(m, std::abs(samples_[j] - other.samples_[j]));
  return m;
}

cplx WaveFunction::inner(const WaveFunction& other) const {
  require_same_grid(grid_, other.grid_);
  cplx sum{};
  for (std::size_t j = 0; j < samples_.size(); ++j) sum += std::conj(samples_[j]) * other.samples_[j];
  return sum * grid_.dx();
}

WaveFunction& WaveFunction::operator+=(const WaveFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

WaveFunction& WaveFunction::operator*=(cplx s) {
  for (auto& v : samples_) v *= s;
  return *this;
}

std::string describe(const OperatorFactor& f) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Shift>) out << "Shift(" << v.c << ")";
        else if constexpr (std::is_same_v<T, Dilation>) out << "Dilation(" << v.scale << ")";
        else if constexpr (std::is_same_v<T, SpectralD2>) out << "SpectralD2(" << v.c.real() << (v.c.imag() < 0 ? "" : "+") << v.c.imag() << "i)";
        else if constexpr (std::is_same_v<T, QuadraticPhase>) out << "QuadraticPhase(" << v.a << ")";
        else if constexpr (std::is_same_v<T, LinearPhase>) out << "LinearPhase(" << v.p << ")";
        else out << "Scalar(" << v.s.real() << (v.s.imag() < 0 ? "" : "+") << v.s.imag() << "i)";
      },
      f);
  return out.str();
}

WaveFunction apply_shift(const WaveFunction& psi, double c) {
  const auto& grid = psi.grid();
  if (!std::isfinite(c) || !(std::abs(c) < grid.length() / 2.0)) {
    std::ostringstream msg;
    msg << "shift " << c << " exceeds half the grid width " << grid.length() / 2.0;
    throw ShiftTooLargeError(msg.str());
  }
  if (c == 0.0) return psi;
  return spectral_multiply(psi, [c](double k) { return std::exp(I * (k * c)); });
}

WaveFunction apply_dilation(const WaveFunction& psi, double scale, Diagnostics* diag,
                            double overflow_fraction, std::size_t oversample) {
  if (!std::isfinite(scale) || !(scale > 0.0)) throw DomainError("dilation scale must be > 0");
  if (!is_power_of_two(oversample)) throw DomainError("dilation oversampling must be a power of two");
  if (scale == 1.0) return psi;

  const auto& grid = psi.grid();
  const std::size_t n = grid.size();
  const std::vector<cplx> fine = oversample == 1 ? psi.samples() : band_limited_upsample(psi.samples(), oversample);
  const auto m = static_cast<std::ptrdiff_t>(fine.size());
  const double h = grid.dx() / static_cast<double>(oversample);
  const auto& in = psi.samples();
  auto at = [&](std::ptrdiff_t i) -> cplx { return (i < 0 || i >= m) ? cplx{} : fine[static_cast<std::size_t>(i)]; };

  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = (scale * grid.x(j) - grid.x_min()) / h;  // fractional source index
    if (u < -1.0 || u > static_cast<double>(m)) continue;
    const double base = std::floor(u);
    const double f = u - base;
    const auto i = static_cast<std::ptrdiff_t>(base);
    // Four-point Lagrange weights on nodes i-1, i, i+1, i+2.
    const double wm = -f * (f - 1.0) * (f - 2.0) / 6.0;
    const double w0 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    const double w1 = -(f + 1.0) * f * (f - 2.0) / 2.0;
    const double w2 = (f + 1.0) * f * (f - 1.0) / 6.0;
    out[j] = wm * at(i - 1) + w0 * at(i) + w1 * at(i + 1) + w2 * at(i + 2);
  }

  if (diag != nullptr) {
    // Input mass outside [scale * x_min, scale * x_max) is not represented.
    const double lo = scale * grid.x_min();
    const double hi = scale * grid.x_max();
    double lost = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = std::norm(in[j]);
      total += w;
      if (grid.x(j) < lo || grid.x(j) >= hi) lost += w;
    }
    if (total > 0.0 && lost / total > overflow_fraction) {
      std::ostringstream msg;
      msg << "dilation by " << scale << " drops " << lost / total << " of the norm outside the grid";
      diag->warnings.push_back(msg.str());
    }
  }
  return WaveFunction(grid, std::move(out));
}

WaveFunction apply_spectral_d2(const WaveFunction& psi, cplx c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("SpectralD2 coefficient must be finite");
  if (c.real() < 0.0) throw DomainError("SpectralD2 requires Re(c) >= 0 (backward diffusion is ill-posed)");
  if (c == cplx{}) return psi;
  return spectral_multiply(psi, [c](double k) { return std::exp(-c * (k * k)); });
}

WaveFunction apply_phase(const WaveFunction& psi, const QuadraticPhase& f) {
  if (f.a == 0.0) return psi;
  return pointwise_multiply(psi, [a = f.a](double x) { return std::exp(I * (a * x * x)); });
}

WaveFunction apply_phase(const WaveFunction& psi, const LinearPhase& f) {
  if (f.p == 0.0) return psi;
  return pointwise_multiply(psi, [p = f.p](double x) { return std::exp(I * (p * x)); });
}

WaveFunction apply_phase(const WaveFunction& psi, const Scalar& f) {
  WaveFunction out = psi;
  out *= f.s;
  return out;
}

WaveFunction apply_factor(const WaveFunction& psi, const OperatorFactor& f, Diagnostics* diag) {
  return std::visit(
      [&](const auto& v) -> WaveFunction {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Shift>) return apply_shift(psi, v.c);
        else if constexpr (std::is_same_v<T, Dilation>) return apply_dilation(psi, v.scale, diag);
        else if constexpr (std::is_same_v<T, SpectralD2>) return apply_spectral_d2(psi, v.c);
        else return apply_phase(psi, v);
      },
      f);
}

std::size_t density_argmax(const WaveFunction& psi) {
  const auto& v = psi.samples();
  const auto it = std::max_element(v.begin(), v.end(), [](cplx a, cplx b) { return std::norm(a) < std::norm(b); });
  return static_cast<std::size_t>(it - v.begin());
}

WaveFunction align_global_phase(const WaveFunction& psi, const WaveFunction& reference, std::size_t index) {
  require_same_grid(psi.grid(), reference.grid());
  const cplx ratio = reference[index] / psi[index];
  if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()) || ratio == cplx{})
    throw DomainError("cannot fix a global phase at a zero sample");
  WaveFunction out = psi;
  out *= ratio / std::abs(ratio);
  return out;
}

double boundary_amplitude(const WaveFunction& psi) {
  return std::max(std::abs(psi.samples().front()), std::abs(psi.samples().back()));
}

WaveFunction embed(const WaveFunction& psi, std::size_t factor) {
  if (factor == 0 || !is_power_of_two(factor)) throw DomainError("padding factor must be a power of two");
  if (factor == 1) return psi;
  const auto& grid = psi.grid();
  const std::size_t offset = (factor - 1) * grid.size() / 2;
  const double extra = grid.dx() * static_cast<double>(offset);
  Grid padded(grid.x_min() - extra, grid.x_min() - extra + grid.dx() * static_cast<double>(factor * grid.size()),
              factor * grid.size());
  std::vector<cplx> data(padded.size());
  std::copy(psi.samples().begin(), psi.samples().end(), data.begin() + static_cast<std::ptrdiff_t>(offset));
  return WaveFunction(padded, std::move(data));
}

WaveFunction crop(const WaveFunction& padded, const Grid& target) {
  if (padded.grid() == target) return padded;
  const auto& grid = padded.grid();
  if (grid.size() < target.size() || grid.size() % target.size() != 0)
    throw DomainError("crop target is not a sub-window of the padded grid");
  const std::size_t offset = (grid.size() - target.size()) / 2;
  const auto first = padded.samples().begin() + static_cast<std::ptrdiff_t>(offset);
  return WaveFunction(target, std::vector<cplx>(first, first + static_cast<std::ptrdiff_t>(target.size())));
}

WaveFunction apply_chain(const WaveFunction& psi, const FactorChain& chain, Diagnostics* diag,
                         const ChainOptions& options) {
  if (chain.empty()) return psi;
  const double half_width = psi.grid().length() / 2.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (const auto* s = std::get_if<Shift>(&chain[i]); s != nullptr && !(std::abs(s->c) < half_width)) {
      throw ChainError(i, describe(chain[i]) + ": shift exceeds half the grid width");
    }
  }

  if (diag != nullptr && boundary_amplitude(psi) > options.boundary_tolerance) {
    std::ostringstream msg;
    msg << "input amplitude " << boundary_amplitude(psi) << " at the grid edge exceeds "
        << options.boundary_tolerance << "; results near the edges are unreliable";
    diag->warnings.push_back(msg.str());
  }

  WaveFunction state = embed(psi, options.padding);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    try {
      state = apply_factor(state, chain[i], diag);
    } catch (const std::exception& e) {
      throw ChainError(i, describe(chain[i]) + ": " + e.what());
    }
  }
  WaveFunction out = crop(state, psi.grid());
  if (diag != nullptr) {
    const double total = state.norm_squared();
    const double lost = total - out.norm_squared();
    if (total > 0.0) diag->cropped_fraction = std::max(diag->cropped_fraction, lost / total);
    if (total > 0.0 && lost / total > options.crop_warning) {
      std::ostringstream msg;
      msg << "chain output leaves the grid window: " << lost / total << " of the norm cropped";
      diag->warnings.push_back(msg.str());
    }
  }
  return out;
}

FactorChain factors_from_coefficients(const FactorizationCoefficients& c) {
  if (c.alpha.imag() != 0.0 || c.beta.imag() != 0.0)
    throw DomainError("grid factors need real alpha and beta");
  FactorChain chain;
  if (c.gamma != cplx{}) chain.emplace_back(SpectralD2{I * c.gamma});
  if (c.beta != cplx{}) chain.emplace_back(Dilation{std::exp(c.beta.real())});
  if (c.alpha != cplx{}) chain.emplace_back(QuadraticPhase{c.alpha.real()});
  chain.emplace_back(Scalar{std::exp(c.delta)});
  return chain;
}

FactorChain build_factor_sequence(const OperatorKind& kind) {
  return std::visit(
      [](const auto& op) -> FactorChain {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, DisplacementOp>) {
          FactorChain chain;
          if (op.x0 != 0.0) chain.emplace_back(Shift{-op.x0});
          if (op.p0 != 0.0) chain.emplace_back(LinearPhase{op.p0});
          chain.emplace_back(Scalar{std::exp(-I * (op.x0 * op.p0 / 2.0))});
          return chain;
        } else if constexpr (std::is_same_v<T, SqueezeOp>) {
          return factors_from_coefficients(squeeze_factorization(op.z, 1.0));
        } else {
          if (op.substeps < 1) throw DomainError("substeps must be >= 1");
          const auto step = factors_from_coefficients(time_displacement_factorization(op.t / op.substeps));
          FactorChain chain;
          chain.reserve(step.size() * static_cast<std::size_t>(op.substeps));
          for (int k = 0; k < op.substeps; ++k) chain.insert(chain.end(), step.begin(), step.end());
          return chain;
        }
      },
      kind);
}

int min_substeps(double t, double max_step) {
  if (!(max_step > 0.0) || !std::isfinite(t)) throw DomainError("min_substeps: bad arguments");
  return std::max(1, static_cast<int>(std::ceil(std::abs(t) / max_step - 1e-12)));
}

}  // namespace opfactor
