#pragma once

// Wavefunctions sampled on a uniform grid and the elementary actions of the
// factorized operators:
//
//   exp[c d] h(x)        = h(x + c)           Shift (spectral)
//   exp[tau x d] h(x)    = h(x e^tau)         Dilation (refined cubic interpolation)
//   exp[c d^2] h         = Gaussian smoothing SpectralD2 (multiply by exp[-c k^2])
//   exp[i a x^2], exp[i p x], scalar           pointwise phases
//
// Spectral steps treat the grid as periodic; states are expected to decay
// below ~1e-12 at both edges.

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "opfactor/algebra.hpp"

namespace opfactor {

class Grid {
 public:
  /// Throws DomainError unless x_max > x_min and n is a power of two >= 16.
  Grid(double x_min, double x_max, std::size_t n);

  /// [-12, 12) with 2048 points.
  static Grid standard() { return Grid(-12.0, 12.0, 2048); }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return x_max_ - x_min_; }
  double dx() const noexcept { return length() / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return x_min_ + dx() * static_cast<double>(j); }
  /// DFT wavenumber of bin j (FFTW ordering).
  double wavenumber(std::size_t j) const noexcept;
  std::vector<double> points() const;

  bool operator==(const Grid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

class WaveFunction {
 public:
  WaveFunction(Grid grid, std::vector<cplx> samples);
  explicit WaveFunction(Grid grid) : WaveFunction(grid, std::vector<cplx>(grid.size())) {}

  static WaveFunction sample(const Grid& grid, const std::function<cplx(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<cplx>& samples() const noexcept { return samples_; }
  std::vector<cplx>& samples() noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  cplx operator[](std::size_t j) const { return samples_[j]; }

  /// Rectangle-rule sum of |psi|^2 dx (exact for the periodic trapezoid).
  double norm_squared() const;
  double norm() const;
  std::vector<double> density() const;

  /// Largest pointwise |this - other|; grids must match.
  double max_abs_difference(const WaveFunction& other) const;
  /// Rectangle-rule inner product <this|other>.
  cplx inner(const WaveFunction& other) const;

  WaveFunction& operator+=(const WaveFunction& other);
  WaveFunction& operator*=(cplx s);
  friend WaveFunction operator+(WaveFunction a, const WaveFunction& b) { return a += b; }
  friend WaveFunction operator*(cplx s, WaveFunction a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<cplx> samples_;
};

struct Shift {
  double c;  ///< result is psi(x + c)
};
struct Dilation {
  double scale;  ///< result is psi(scale * x); scale = e^tau
};
struct SpectralD2 {
  cplx c;  ///< exp[c d^2]; Re c >= 0
};
struct QuadraticPhase {
  double a;  ///< multiply by exp[i a x^2]
};
struct LinearPhase {
  double p;  ///< multiply by exp[i p x]
};
struct Scalar {
  cplx s;
};

using OperatorFactor = std::variant<Shift, Dilation, SpectralD2, QuadraticPhase, LinearPhase, Scalar>;

/// Factors in application order: element 0 acts on the state first.
using FactorChain = std::vector<OperatorFactor>;

std::string describe(const OperatorFactor& f);

/// Collects non-fatal diagnostics such as dilation support overflow.
struct Diagnostics {
  std::vector<std::string> warnings;
  /// Largest fraction of |psi|^2 cropped at the window by apply_chain.
  double cropped_fraction = 0.0;
};

WaveFunction apply_shift(const WaveFunction& psi, double c);

/// Samples psi(scale * x) by cubic Lagrange interpolation; points that map
/// outside the original grid read as zero. The samples are first refined
/// `oversample` times by trigonometric interpolation, which cuts the cubic
/// error by oversample^4 for band-limited states; 1 interpolates the raw
/// samples. Warns through `diag` when more than `overflow_fraction` of the
/// input norm falls outside the region the output grid can represent.
WaveFunction apply_dilation(const WaveFunction& psi, double scale, Diagnostics* diag = nullptr,
                            double overflow_fraction = 1e-6, std::size_t oversample = 4);

WaveFunction apply_spectral_d2(const WaveFunction& psi, cplx c);

WaveFunction apply_phase(const WaveFunction& psi, const QuadraticPhase& f);
WaveFunction apply_phase(const WaveFunction& psi, const LinearPhase& f);
WaveFunction apply_phase(const WaveFunction& psi, const Scalar& f);

WaveFunction apply_factor(const WaveFunction& psi, const OperatorFactor& f, Diagnostics* diag = nullptr);

struct ChainOptions {
  /// The chain runs on a zero-padded grid `padding` times longer (same dx)
  /// and the result is cropped back. Intermediate states of a factorized
  /// operator can be much wider than its input or output (the free-spreading
  /// factor precedes the compressing dilation), so the padded room keeps the
  /// periodic spectral steps from wrapping. Must be a power of two.
  std::size_t padding = 4;
  /// Warn when the cropped-away norm exceeds this fraction of the total.
  double crop_warning = 1e-10;
  /// Warn when the input is not negligible at the window edges.
  double boundary_tolerance = 1e-12;
};

/// Index of the largest |psi|^2 sample.
std::size_t density_argmax(const WaveFunction& psi);

/// psi multiplied by the unit phase that makes psi[index] parallel to
/// reference[index].
WaveFunction align_global_phase(const WaveFunction& psi, const WaveFunction& reference, std::size_t index);

/// Largest |psi| over the first and last sample.
double boundary_amplitude(const WaveFunction& psi);

/// Applies factors in order. A failing factor is rethrown as ChainError
/// carrying its index.
WaveFunction apply_chain(const WaveFunction& psi, const FactorChain& chain, Diagnostics* diag = nullptr,
                         const ChainOptions& options = {});

/// Zero-pads psi onto a grid `factor` times longer with the same spacing,
/// centred on the original window.
WaveFunction embed(const WaveFunction& psi, std::size_t factor);
/// Restricts a padded state back to the window of `target`.
WaveFunction crop(const WaveFunction& padded, const Grid& target);

struct DisplacementOp {
  double x0 = 0.0;
  double p0 = 0.0;
};
struct SqueezeOp {
  SqueezeParameter z;
};
struct TimeOp {
  double t = 0.0;
  int substeps = 1;
};
using OperatorKind = std::variant<DisplacementOp, SqueezeOp, TimeOp>;

/// Chain for exp[delta] exp[i alpha x^2] exp[beta x d] exp[i gamma d^2]:
/// SpectralD2(i gamma), Dilation(e^beta), QuadraticPhase(alpha), Scalar(e^delta).
/// Factors that are exactly the identity are omitted; the scalar is always
/// kept. Requires real alpha and beta.
FactorChain factors_from_coefficients(const FactorizationCoefficients& c);

/// D(x0, p0): Shift(-x0), LinearPhase(p0), Scalar(exp[-i x0 p0 / 2]).
/// S(z) and T(t) go through their closed-form coefficients; T is split into
/// `substeps` equal pieces, each of which must avoid odd multiples of pi/2.
FactorChain build_factor_sequence(const OperatorKind& kind);

/// Smallest substep count keeping each time step within max_step.
int min_substeps(double t, double max_step = 1.0);

}  // namespace opfactor
